"""Bulk-wave physics of the fluid-saturated poroelastic half-space medium.

Everything here is a pure function from variant parameters to derived
quantities. Conventions, fixed once for the whole package:

* dimensionless units: frame shear modulus N = 1, grain density = 1,
  contact length = 1; the angular frequency is the variant's ``eta``;
* time factor exp(i*omega*t), plane waves exp(i*(omega*t - l.x)), so the
  viscous coupling b enters the densities as -i*b/omega on the diagonal;
* elastic closure: lambda from the frame Poisson ratio, fluid coupling
  moduli Q = (1-n)*kf and R = n*kf, longitudinal modulus
  P = lambda + 2N + Q^2/R, tortuosity alpha = (1 + 1/n)/2.

The kf = 0 medium is degenerate: the fluid carries no stress, only one
dilatational wave exists and the slow-wave slots of `WaveSet` are None.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularMediumError, SingularPoissonError, SweepRowError
from .tables import SeriesTable
from .variant import InputVariant

GRAIN_DENSITY = 1.0
SHEAR_MODULUS = 1.0


@dataclass(frozen=True)
class BiotConstants:
    """Elastic closure of a variant: frame, fluid and coupling moduli."""

    N: float
    lam: float
    Q: float
    R: float
    A_biot: float   # fluid-augmented Lame constant, lambda + Q^2/R
    P: float        # longitudinal modulus, A_biot + 2N
    degenerate: bool

    @property
    def modulus_det(self) -> float:
        """Determinant P*R - Q^2 of the modulus matrix (the run log's ``A``)."""
        return self.P * self.R - self.Q * self.Q


@dataclass(frozen=True)
class DensityMatrix:
    """Solid/fluid/coupling densities with tortuosity-induced added mass."""

    rho11: float
    rho12: float
    rho22: float
    rho_a: float        # apparent (added) mass, >= 0
    alpha_tort: float   # tortuosity, >= 1

    @property
    def rho_total(self) -> float:
        return self.rho11 + 2.0 * self.rho12 + self.rho22


@dataclass(frozen=True)
class ComplexDensities:
    """Density matrix complexified by viscous dissipation at frequency omega."""

    cr11: complex
    cr12: complex
    cr22: complex
    b: float
    omega: float


@dataclass(frozen=True)
class WaveSet:
    """Complex bulk wavenumbers and fluid/solid amplitude ratios at omega.

    Wavenumbers are reported with the branch Im(l) >= 0; purely real roots
    take the positive sign. `l_s`/`M_s` are None for the degenerate kf = 0
    medium, which supports no slow wave.
    """

    l_f: complex
    l_s: complex | None
    l_sh: complex
    M_f: complex
    M_s: complex | None
    M_sh: complex
    omega: float

    @property
    def degenerate(self) -> bool:
        return self.l_s is None


def biot_constants(v: InputVariant) -> BiotConstants:
    """Derive the elastic closure from a variant.

    kf = 0 returns the decoupled limit Q = R = 0, P = lambda + 2N flagged
    degenerate instead of erroring: the elastic medium is the key oracle.
    """
    if v.anus >= 0.5:
        raise SingularPoissonError(
            f"Poisson ratio {v.anus!r} >= 0.5: lambda undefined")
    N = SHEAR_MODULUS
    lam = 2.0 * N * v.anus / (1.0 - 2.0 * v.anus)
    if v.kf > 0.0:
        Q = (1.0 - v.n) * v.kf
        R = v.n * v.kf
        A = lam + Q * Q / R
        degenerate = False
    else:
        Q = R = 0.0
        A = lam
        degenerate = True
    return BiotConstants(N=N, lam=lam, Q=Q, R=R, A_biot=A, P=A + 2.0 * N,
                         degenerate=degenerate)


def density_matrix(v: InputVariant) -> DensityMatrix:
    """Mass densities with added mass from the tortuosity (1 + 1/n)/2."""
    alpha = (1.0 + 1.0 / v.n) / 2.0
    rho_a = (alpha - 1.0) * v.n * v.rhof
    return DensityMatrix(
        rho11=(1.0 - v.n) * GRAIN_DENSITY + rho_a,
        rho12=-rho_a,
        rho22=v.n * v.rhof + rho_a,
        rho_a=rho_a,
        alpha_tort=alpha,
    )


def dissipation_b(v: InputVariant) -> float:
    """Viscous coupling b = viscosity * n^2 / permeability; 0 with seepage off."""
    if v.i_seepage != 1:
        return 0.0
    return v.viscosity * v.n * v.n / v.permeabil


def effective_densities(dm: DensityMatrix, b: float, omega: float) -> ComplexDensities:
    """Complexify the density matrix with the dissipation coupling at omega."""
    if omega <= 0.0:
        raise DomainError(f"omega must be > 0, got {omega!r}")
    if b == 0.0:
        return ComplexDensities(complex(dm.rho11, 0.0), complex(dm.rho12, 0.0),
                                complex(dm.rho22, 0.0), 0.0, omega)
    r = b / omega
    return ComplexDensities(complex(dm.rho11, -r), complex(dm.rho12, r),
                            complex(dm.rho22, -r), b, omega)


def _principal_rep(l: complex) -> complex:
    # reported branch: Im(l) >= 0; real roots resolved to positive real part
    if l.imag < 0.0 or (l.imag == 0.0 and l.real < 0.0):
        return -l
    return l


def _amplitude_ratio(bc: BiotConstants, cd: ComplexDensities, x: complex) -> complex:
    """Fluid/solid displacement ratio for a dilatational root x = l^2.

    Both rows of the dispersion system give the same ratio on the dispersion
    curve; fall back to the second row if the first denominator vanishes.
    """
    w2 = cd.omega * cd.omega
    den = bc.Q * x - w2 * cd.cr12
    if den != 0:
        return -(bc.P * x - w2 * cd.cr11) / den
    return -(bc.Q * x - w2 * cd.cr12) / (bc.R * x - w2 * cd.cr22)


def bulk_wavenumbers(bc: BiotConstants, cd: ComplexDensities) -> WaveSet:
    """Solve the dispersion relations for the three bulk waves at omega.

    The squared dilatational wavenumbers are the roots of

        (P*R - Q^2) x^2 - omega^2 (P*cr22 + R*cr11 - 2Q*cr12) x
                        + omega^4 (cr11*cr22 - cr12^2) = 0

    labeled so the fast wave has the larger phase speed |omega/l|. The shear
    wavenumber is l_sh^2 = omega^2 (cr11*cr22 - cr12^2) / (N*cr22).
    """
    w2 = cd.omega * cd.omega
    det_rho = cd.cr11 * cd.cr22 - cd.cr12 * cd.cr12

    if bc.degenerate:
        # stress-free fluid: a single dilatational wave; the fluid is either
        # inertially slaved (cr22 != 0) or entirely absent (cr22 == 0)
        if cd.cr22 == 0:
            xf = w2 * cd.cr11 / bc.P
            xsh = w2 * cd.cr11 / bc.N
            M = 0.0 + 0.0j
        else:
            xf = w2 * det_rho / (bc.P * cd.cr22)
            xsh = w2 * det_rho / (bc.N * cd.cr22)
            M = -cd.cr12 / cd.cr22
        return WaveSet(l_f=_principal_rep(cmath.sqrt(xf)), l_s=None,
                       l_sh=_principal_rep(cmath.sqrt(xsh)),
                       M_f=M, M_s=None, M_sh=M, omega=cd.omega)

    if cd.cr22 == 0:
        raise DomainError("cr22 = 0: a massless fluid with finite stiffness "
                          "has no finite dispersion solution")
    a2 = complex(bc.modulus_det)
    if a2 == 0:
        raise SingularMediumError("P*R - Q^2 = 0: degenerate dispersion quadratic")
    a1 = -w2 * (bc.P * cd.cr22 + bc.R * cd.cr11 - 2.0 * bc.Q * cd.cr12)
    a0 = w2 * w2 * det_rho
    disc = cmath.sqrt(a1 * a1 - 4.0 * a2 * a0)
    if (a1.conjugate() * disc).real > 0.0:
        disc = -disc
    q = -(a1 + disc) / 2.0
    x1 = q / a2
    x2 = a0 / q
    xf, xs = (x1, x2) if abs(x1) <= abs(x2) else (x2, x1)

    xsh = w2 * det_rho / (bc.N * cd.cr22)
    return WaveSet(
        l_f=_principal_rep(cmath.sqrt(xf)),
        l_s=_principal_rep(cmath.sqrt(xs)),
        l_sh=_principal_rep(cmath.sqrt(xsh)),
        M_f=_amplitude_ratio(bc, cd, xf),
        M_s=_amplitude_ratio(bc, cd, xs),
        M_sh=-cd.cr12 / cd.cr22,
        omega=cd.omega,
    )


def normalized_velocities(v: InputVariant, eta_grid) -> SeriesTable:
    """Phase-speed magnitudes over a frequency grid, normalized by the
    elastic shear speed sqrt(N / rho_total).

    A failing row aborts the sweep with its index (SweepRowError); a
    degenerate medium reports slow-wave speed 0.
    """
    grid = np.asarray(eta_grid, dtype=float)
    if grid.ndim != 1 or len(grid) == 0:
        raise DomainError("eta_grid must be a non-empty 1-d sequence")
    if not np.all(grid > 0.0) or (len(grid) > 1 and not np.all(np.diff(grid) > 0)):
        raise DomainError("eta_grid must be positive and strictly increasing")
    bc = biot_constants(v)
    dm = density_matrix(v)
    b = dissipation_b(v)
    v_ref = float(np.sqrt(bc.N / dm.rho_total))
    vf = np.empty_like(grid)
    vs = np.empty_like(grid)
    vsh = np.empty_like(grid)
    for i, eta in enumerate(grid):
        try:
            ws = bulk_wavenumbers(bc, effective_densities(dm, b, float(eta)))
        except Exception as exc:
            raise SweepRowError(i, float(eta), str(exc)) from exc
        vf[i] = eta / abs(ws.l_f) / v_ref
        vs[i] = (eta / abs(ws.l_s) / v_ref) if ws.l_s is not None else 0.0
        vsh[i] = eta / abs(ws.l_sh) / v_ref
    return SeriesTable("velocities", "eta",
                       (("eta", grid), ("Vf", vf), ("Vs", vs), ("Vsh", vsh)))
