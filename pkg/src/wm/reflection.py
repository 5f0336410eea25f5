"""Free-surface reflection of plane P and SV waves.

The half-space occupies z >= 0 (z points into the medium), the free surface
is z = 0. With the package-wide convention exp(i*(omega*t - kx*x - kz*z)),
a reflected wave travels down (kz = +nu) and the incident wave up
(kz = -nu). Vertical wavenumbers take the decaying branch Im(nu) < 0, or
Re(nu) > 0 when real, so reflected waves either propagate downward or decay
with depth.

Displacements derive from a dilatational potential per P wave and a shear
potential for SV: u = grad(phi) + curl(psi * y_hat). The fluid moves with
ratio M per wave. Boundary conditions at z = 0:

* total normal stress  tau_zz = 0 (solid partial stress plus fluid stress),
* shear stress         tau_xz = 0,
* sealed surface:      n*(U_z - u_z) = 0   (no relative normal flow),
  open pores:          sigma = Q*e + R*eps = 0  (no fluid stress).

The incident wave is normalized to unit displacement amplitude, so the
potential normalizer is c_inc = 1/l_inc and the reported reflection
coefficients are displacement-amplitude ratios.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .core import (BiotConstants, ComplexDensities, DensityMatrix, WaveSet,
                   biot_constants, bulk_wavenumbers, density_matrix,
                   dissipation_b, effective_densities)
from .errors import (DomainError, NearCriticalAngleError, SelectorError,
                     SingularMediumError, VariantValidationError)
from .tables import SeriesTable
from .variant import InputVariant, validate_variant

CONDITION_LIMIT = 1e12

DEFAULT_ANGLE_GRID = tuple(float(a) for a in range(1, 90))
DEFAULT_ETA_GRID = tuple(np.geomspace(0.01, 100.0, 40))


@dataclass(frozen=True)
class FluxReport:
    """Time-averaged vertical energy fluxes through the surface, per wave."""

    incident: float
    reflected_pf: float
    reflected_ps: float
    reflected_sh: float
    imbalance_abs: float
    imbalance_rel: float

    @property
    def reflected_total(self) -> float:
        return self.reflected_pf + self.reflected_ps + self.reflected_sh


@dataclass(frozen=True)
class ReflectionSolution:
    """Everything produced by one boundary-value solve.

    The g-entry names mirror the legacy run log: rows 1/2 are the stress
    conditions, row 4 the relative-flow (sealed) condition and row 6 the
    fluid-stress (open) condition; both candidate third rows are always
    stored, the drainage option decides which one was solved.
    """

    incidence: str
    angle_deg: float
    drainage: str
    omega: float
    waves: WaveSet
    kx: complex
    nu_f: complex
    nu_s: complex | None
    nu_sh: complex
    g111: complex
    g112: complex
    g12: complex
    g211: complex
    g212: complex
    g22: complex
    g411: complex
    g412: complex
    g42: complex
    g611: complex
    g612: complex
    c_inc: complex
    a_ref_f: complex
    a_ref_s: complex
    a_ref_sh: complex
    c_ref_Pf: complex
    c_ref_Ps: complex
    c_ref_S: complex
    coeslow: complex
    uux: complex
    uuz: complex
    residual_norm: float
    condition: float
    flux_report: FluxReport
    bc: BiotConstants
    dm: DensityMatrix
    densities: ComplexDensities


def decaying_representative(l: complex) -> complex:
    """Wavenumber branch that decays along propagation for exp(i(wt - l x))."""
    if l.imag > 0.0 or (l.imag == 0.0 and l.real < 0.0):
        return -l
    return l


def _vertical(k2: complex) -> complex:
    nu = cmath.sqrt(k2)
    if nu.imag > 0.0 or (nu.imag == 0.0 and nu.real < 0.0):
        nu = -nu
    return nu


def _p_stress_coeffs(bc: BiotConstants, M: complex, l2: complex,
                     kx: complex, kz: complex):
    """(tau_zz, tau_xx, tau_xz, sigma) per unit P potential amplitude.

    tau are total stresses (solid partial + fluid), sigma the fluid stress.
    """
    common = (bc.A_biot + bc.Q) * l2 + (bc.Q + bc.R) * M * l2
    tzz = -(common + 2.0 * bc.N * kz * kz)
    txx = -(common + 2.0 * bc.N * kx * kx)
    txz = -2.0 * bc.N * kx * kz
    sig = -(bc.Q + bc.R * M) * l2
    return tzz, txx, txz, sig


def _sv_stress_coeffs(bc: BiotConstants, kx: complex, kz: complex):
    tzz = -2.0 * bc.N * kx * kz
    txx = 2.0 * bc.N * kx * kz
    txz = bc.N * (kz * kz - kx * kx)
    return tzz, txx, txz, 0.0 + 0.0j


def _p_flow_entry(n: float, M: complex, kz: complex) -> complex:
    # n*(U_z - u_z) per unit P potential amplitude
    return -1j * n * kz * (M - 1.0)


def _sv_flow_entry(n: float, M_sh: complex, kx: complex) -> complex:
    return -1j * n * kx * (M_sh - 1.0)


def _p_wave_flux(bc: BiotConstants, M: complex, l2: complex, kx: complex,
                 kz: complex, omega: float, amp: complex) -> float:
    """Time-averaged z energy flux of one P wave evaluated at z = 0."""
    br = (kz.conjugate() * ((bc.A_biot + bc.Q * M) * l2 + 2.0 * bc.N * kz * kz)
          + 2.0 * bc.N * abs(kx) ** 2 * kz
          + kz.conjugate() * M.conjugate() * (bc.Q + bc.R * M) * l2)
    return 0.5 * omega * abs(amp) ** 2 * br.real


def _sv_wave_flux(bc: BiotConstants, kx: complex, kz: complex,
                  omega: float, amp: complex) -> float:
    br = 2.0 * abs(kx) ** 2 * kz + (kz * kz - kx * kx) * kz.conjugate()
    return 0.5 * omega * bc.N * abs(amp) ** 2 * br.real


def solve_reflection(v: InputVariant, incidence: str = "P",
                     angle_deg: float = 0.0) -> ReflectionSolution:
    """Solve the free-surface problem for one incident wave.

    Raises NearCriticalAngleError when the boundary matrix condition number
    exceeds 1e12, and SingularMediumError for a sealed surface over a
    degenerate (kf = 0) medium with mobile fluid, which has no slow wave to
    carry the relative-flow condition.
    """
    if incidence not in ("P", "SV"):
        raise DomainError(f"incidence must be 'P' or 'SV', got {incidence!r}")
    if not 0.0 <= angle_deg < 90.0:
        raise DomainError(f"angle must lie in [0, 90), got {angle_deg!r}")
    report = validate_variant(v)
    if not report.ok:
        raise VariantValidationError(report)

    bc = biot_constants(v)
    dm = density_matrix(v)
    cd = effective_densities(dm, dissipation_b(v), float(v.eta))
    ws = bulk_wavenumbers(bc, cd)
    omega = cd.omega
    drainage = "sealed" if v.i_sealed == 1 else "open"
    if ws.degenerate and drainage == "sealed" and v.rhof > 0.0:
        raise SingularMediumError(
            "sealed surface over a kf = 0 medium with mobile fluid: "
            "no slow wave exists to satisfy the relative-flow condition")

    lf = decaying_representative(ws.l_f)
    lsh = decaying_representative(ws.l_sh)
    ls = decaying_representative(ws.l_s) if ws.l_s is not None else None
    l2f = lf * lf
    l2sh = lsh * lsh

    theta = math.radians(angle_deg)
    l_inc = lf if incidence == "P" else lsh
    kx = l_inc * math.sin(theta)
    nu_f = _vertical(l2f - kx * kx)
    nu_sh = _vertical(l2sh - kx * kx)
    nu_s = _vertical(ls * ls - kx * kx) if ls is not None else None

    tzz_f, _, txz_f, sig_f = _p_stress_coeffs(bc, ws.M_f, l2f, kx, nu_f)
    tzz_sv, _, txz_sv, _ = _sv_stress_coeffs(bc, kx, nu_sh)
    flow_f = _p_flow_entry(v.n, ws.M_f, nu_f)
    flow_sv = _sv_flow_entry(v.n, ws.M_sh, kx)

    if ls is not None:
        l2s = ls * ls
        tzz_s, _, txz_s, sig_s = _p_stress_coeffs(bc, ws.M_s, l2s, kx, nu_s)
        flow_s = _p_flow_entry(v.n, ws.M_s, nu_s)
    else:
        tzz_s = txz_s = sig_s = flow_s = 0.0 + 0.0j

    # incident-wave entries: kz = -nu flips the sign of terms odd in kz
    a_inc = 1.0 / l_inc
    if incidence == "P":
        inc_tzz, _, inc_txz, inc_sig = _p_stress_coeffs(bc, ws.M_f, l2f, kx, -nu_f)
        inc_flow = _p_flow_entry(v.n, ws.M_f, -nu_f)
    else:
        inc_tzz, _, inc_txz, inc_sig = _sv_stress_coeffs(bc, kx, -nu_sh)
        inc_flow = flow_sv

    if ws.degenerate:
        g = np.array([[tzz_f, tzz_sv], [txz_f, txz_sv]], dtype=complex)
        rhs = -np.array([inc_tzz, inc_txz], dtype=complex) * a_inc
    else:
        third = ([flow_f, flow_s, flow_sv] if drainage == "sealed"
                 else [sig_f, sig_s, 0.0])
        inc_third = inc_flow if drainage == "sealed" else inc_sig
        g = np.array([[tzz_f, tzz_s, tzz_sv],
                      [txz_f, txz_s, txz_sv],
                      third], dtype=complex)
        rhs = -np.array([inc_tzz, inc_txz, inc_third], dtype=complex) * a_inc

    condition = float(np.linalg.cond(g))
    if not np.isfinite(condition) or condition > CONDITION_LIMIT:
        raise NearCriticalAngleError(angle_deg, condition)
    amps = np.linalg.solve(g, rhs)
    residual = float(np.linalg.norm(g @ amps - rhs) / np.linalg.norm(rhs))

    if ws.degenerate:
        a_f, a_sh = complex(amps[0]), complex(amps[1])
        a_s = 0.0 + 0.0j
    else:
        a_f, a_s, a_sh = (complex(amps[0]), complex(amps[1]), complex(amps[2]))

    # displacement-amplitude coefficients; l_inc * a_inc = 1 by construction
    c_ref_Pf = lf * a_f
    c_ref_Ps = (ls * a_s) if ls is not None else 0.0 + 0.0j
    c_ref_S = lsh * a_sh
    coeslow = (a_s / a_inc) if ls is not None else 0.0 + 0.0j

    # total solid surface displacement at the origin
    if incidence == "P":
        uux = -1j * kx * a_inc
        uuz = -1j * (-nu_f) * a_inc
    else:
        uux = 1j * (-nu_sh) * a_inc
        uuz = -1j * kx * a_inc
    uux += -1j * kx * a_f - 1j * kx * a_s + 1j * nu_sh * a_sh
    uuz += -1j * nu_f * a_f + (-1j * nu_s * a_s if nu_s is not None else 0.0) \
        + (-1j * kx) * a_sh

    if incidence == "P":
        f_inc = -_p_wave_flux(bc, ws.M_f, l2f, kx, -nu_f, omega, a_inc)
    else:
        f_inc = -_sv_wave_flux(bc, kx, -nu_sh, omega, a_inc)
    f_pf = _p_wave_flux(bc, ws.M_f, l2f, kx, nu_f, omega, a_f)
    f_ps = (_p_wave_flux(bc, ws.M_s, ls * ls, kx, nu_s, omega, a_s)
            if ls is not None else 0.0)
    f_sh = _sv_wave_flux(bc, kx, nu_sh, omega, a_sh)
    imb = (f_pf + f_ps + f_sh) - f_inc
    flux = FluxReport(incident=f_inc, reflected_pf=f_pf, reflected_ps=f_ps,
                      reflected_sh=f_sh, imbalance_abs=imb,
                      imbalance_rel=imb / abs(f_inc) if f_inc != 0.0 else math.inf)

    return ReflectionSolution(
        incidence=incidence, angle_deg=float(angle_deg), drainage=drainage,
        omega=omega, waves=ws, kx=kx, nu_f=nu_f, nu_s=nu_s, nu_sh=nu_sh,
        g111=tzz_f, g112=tzz_s, g12=tzz_sv,
        g211=txz_f, g212=txz_s, g22=txz_sv,
        g411=flow_f, g412=flow_s, g42=flow_sv,
        g611=sig_f, g612=sig_s,
        c_inc=a_inc, a_ref_f=a_f, a_ref_s=a_s, a_ref_sh=a_sh,
        c_ref_Pf=c_ref_Pf, c_ref_Ps=c_ref_Ps, c_ref_S=c_ref_S, coeslow=coeslow,
        uux=uux, uuz=uuz, residual_norm=residual, condition=condition,
        flux_report=flux, bc=bc, dm=dm, densities=cd)


def energy_balance(sol: ReflectionSolution) -> FluxReport:
    """Flux report of a solved reflection (computed at solve time)."""
    return sol.flux_report


def _check_grid(grid, lo: float, hi: float, what: str) -> np.ndarray:
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or len(g) == 0:
        raise DomainError(f"{what} must be a non-empty 1-d sequence")
    if len(g) > 1 and not np.all(np.diff(g) > 0):
        raise DomainError(f"{what} must be strictly increasing")
    if not (np.all(g >= lo) and np.all(g < hi)):
        raise DomainError(f"{what} must lie in [{lo}, {hi})")
    return g


def sweep_angle(v: InputVariant, incidence: str = "P",
                grid=None) -> tuple[SeriesTable, SeriesTable]:
    """Reflection coefficients and surface displacements over incidence angles.

    A failing row (near-critical angle) becomes a gap row instead of
    aborting the sweep.
    """
    g = _check_grid(DEFAULT_ANGLE_GRID if grid is None else grid, 0.0, 90.0,
                    "angle grid")
    cols = np.full((len(g), 5), np.nan)
    for i, ang in enumerate(g):
        try:
            sol = solve_reflection(v, incidence, float(ang))
        except (NearCriticalAngleError, np.linalg.LinAlgError):
            continue
        cols[i] = (abs(sol.c_ref_Pf), abs(sol.c_ref_Ps), abs(sol.c_ref_S),
                   abs(sol.uux), abs(sol.uuz))
    cofec1 = SeriesTable("cofec1", "angle",
                         (("angle", g), ("coefPf", cols[:, 0]),
                          ("coefPs", cols[:, 1]), ("coefSh", cols[:, 2])))
    displace = SeriesTable("displace", "angle",
                           (("angle", g), ("cabs(uux)", cols[:, 3]),
                            ("cabs(uuz)", cols[:, 4])))
    return cofec1, displace


def sweep_frequency(v: InputVariant, incidence: str = "P",
                    angle_deg: float = 30.0,
                    eta_grid=None) -> tuple[SeriesTable, SeriesTable]:
    """Same series as `sweep_angle` but against frequency at a fixed angle."""
    g = np.asarray(DEFAULT_ETA_GRID if eta_grid is None else eta_grid, dtype=float)
    if g.ndim != 1 or len(g) == 0:
        raise DomainError("eta grid must be a non-empty 1-d sequence")
    if not np.all(g > 0) or (len(g) > 1 and not np.all(np.diff(g) > 0)):
        raise DomainError("eta grid must be positive and strictly increasing")
    cols = np.full((len(g), 5), np.nan)
    for i, eta in enumerate(g):
        try:
            sol = solve_reflection(replace(v, eta=float(eta)), incidence, angle_deg)
        except (NearCriticalAngleError, np.linalg.LinAlgError):
            continue
        cols[i] = (abs(sol.c_ref_Pf), abs(sol.c_ref_Ps), abs(sol.c_ref_S),
                   abs(sol.uux), abs(sol.uuz))
    freq_cof = SeriesTable("freq_cof", "eta",
                           (("eta", g), ("coefPf", cols[:, 0]),
                            ("coefPs", cols[:, 1]), ("coefSh", cols[:, 2])))
    freq_disp = SeriesTable("freq_disp", "eta",
                            (("eta", g), ("cabs(uux)", cols[:, 3]),
                             ("cabs(uuz)", cols[:, 4])))
    return freq_cof, freq_disp


def contact_stresses(v: InputVariant, sol: ReflectionSolution,
                     arc_grid=None, radius: float = 1.0) -> SeriesTable:
    """Total-field stress magnitudes on a semicircular arc below the surface.

    The arc has dimensionless radius `radius`, is centered at the surface
    origin and is parameterized by the polar angle theta in [0, pi] measured
    from the +x axis, so both endpoints lie on the free surface. The column
    set depends on the variant's i_eta selector: 4 series for i_eta = 1
    (tau_zz, tau_xz, tau_xx, sigma), 3 for i_eta = 2 (tau_xx, sigma, tau_xz).
    """
    if v.i_eta not in (1, 2):
        raise SelectorError(f"i_eta must be 1 or 2, got {v.i_eta!r}")
    if radius <= 0.0:
        raise DomainError(f"arc radius must be > 0, got {radius!r}")
    g = np.asarray(np.linspace(0.0, math.pi, 181) if arc_grid is None
                   else arc_grid, dtype=float)
    if g.ndim != 1 or len(g) == 0:
        raise DomainError("arc grid must be a non-empty 1-d sequence")
    if len(g) > 1 and not np.all(np.diff(g) > 0):
        raise DomainError("arc grid must be strictly increasing")
    if not (np.all(g >= 0.0) and np.all(g <= math.pi)):
        raise DomainError("arc grid must lie in [0, pi]")

    x = radius * np.cos(g)
    z = radius * np.sin(g)
    bc, ws, kx = sol.bc, sol.waves, sol.kx
    lf = decaying_representative(ws.l_f)
    lsh = decaying_representative(ws.l_sh)
    ls = decaying_representative(ws.l_s) if ws.l_s is not None else None

    waves = []
    if sol.incidence == "P":
        waves.append(("P", sol.c_inc, ws.M_f, lf * lf, -sol.nu_f))
    else:
        waves.append(("SV", sol.c_inc, ws.M_sh, lsh * lsh, -sol.nu_sh))
    waves.append(("P", sol.a_ref_f, ws.M_f, lf * lf, sol.nu_f))
    if ls is not None:
        waves.append(("P", sol.a_ref_s, ws.M_s, ls * ls, sol.nu_s))
    waves.append(("SV", sol.a_ref_sh, ws.M_sh, lsh * lsh, sol.nu_sh))

    tzz = np.zeros(len(g), dtype=complex)
    txx = np.zeros(len(g), dtype=complex)
    txz = np.zeros(len(g), dtype=complex)
    sig = np.zeros(len(g), dtype=complex)
    for kind, amp, M, l2, kz in waves:
        if amp == 0:
            continue
        if kind == "P":
            c_zz, c_xx, c_xz, c_s = _p_stress_coeffs(bc, M, l2, kx, kz)
        else:
            c_zz, c_xx, c_xz, c_s = _sv_stress_coeffs(bc, kx, kz)
        phase = amp * np.exp(-1j * (kx * x + kz * z))
        tzz += c_zz * phase
        txx += c_xx * phase
        txz += c_xz * phase
        sig += c_s * phase

    if v.i_eta == 1:
        cols = (("theta", g), ("cabs(tau_zz)", np.abs(tzz)),
                ("cabs(tau_xz)", np.abs(txz)), ("cabs(tau_xx)", np.abs(txx)),
                ("cabs(sigma)", np.abs(sig)))
    else:
        cols = (("theta", g), ("cabs(tau_xx)", np.abs(txx)),
                ("cabs(sigma)", np.abs(sig)), ("cabs(tau_xz)", np.abs(txz)))
    return SeriesTable("stresses", "theta", cols)
