"""One-variant compute runs: the pipeline behind the CLI and the service."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, VariantValidationError
from .reflection import (DEFAULT_ANGLE_GRID, DEFAULT_ETA_GRID, contact_stresses,
                         solve_reflection, sweep_angle, sweep_frequency)
from .report import RunOutputs, render_log
from .tables import SeriesTable
from .variant import InputVariant, normalize_variant, validate_variant


@dataclass(frozen=True)
class RunConfig:
    """Grids and knobs of a compute run; defaults mirror the legacy tool."""

    incidence: str = "P"
    angle_grid: tuple[float, ...] = DEFAULT_ANGLE_GRID
    eta_grid: tuple[float, ...] = DEFAULT_ETA_GRID
    log_angle_deg: float = 30.0   # reference solve: log, stresses, freq sweep
    arc_points: int = 181
    arc_radius: float = 1.0


def parse_angle_spec(spec: str) -> tuple[float, ...]:
    """Angle grid from 'MIN:MAX:STEP' (inclusive endpoints, degrees)."""
    try:
        lo, hi, step = (float(p) for p in spec.split(":"))
    except ValueError:
        raise DomainError(f"bad angle spec {spec!r}, expected MIN:MAX:STEP") from None
    if step <= 0 or hi < lo:
        raise DomainError(f"bad angle spec {spec!r}: need MIN <= MAX and STEP > 0")
    grid = np.arange(lo, hi + step / 2, step)
    return tuple(float(a) for a in grid)


def parse_eta_spec(spec: str) -> tuple[float, ...]:
    """Frequency grid from 'LOG:MIN:MAX:N' (log-spaced, inclusive)."""
    parts = spec.split(":")
    if len(parts) != 4 or parts[0].upper() != "LOG":
        raise DomainError(f"bad eta spec {spec!r}, expected LOG:MIN:MAX:N")
    try:
        lo, hi, num = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError:
        raise DomainError(f"bad eta spec {spec!r}") from None
    if lo <= 0 or hi <= lo or num < 1:
        raise DomainError(f"bad eta spec {spec!r}: need 0 < MIN < MAX and N >= 1")
    return tuple(float(e) for e in np.geomspace(lo, hi, num))


def _render_check(v: InputVariant, cfg: RunConfig, sol, run_tables: dict,
                  warnings: tuple[str, ...]) -> str:
    def gaps_of(table: SeriesTable) -> str:
        xs = table.x[table.gap_rows()]
        return " ".join(repr(float(x)) for x in xs) if len(xs) else "none"

    flux = sol.flux_report
    lines = [
        "# check.out: run diagnostics",
        f"variant: {v.ident}",
        f"incidence: {cfg.incidence}",
        f"drainage: {sol.drainage}",
        f"reference_angle_deg: {cfg.log_angle_deg!r}",
        f"omega: {sol.omega!r}",
        f"dissipation_b: {sol.densities.b!r}",
        f"condition_number: {sol.condition!r}",
        f"boundary_residual: {sol.residual_norm!r}",
        f"flux_incident: {flux.incident!r}",
        f"flux_reflected_Pf: {flux.reflected_pf!r}",
        f"flux_reflected_Ps: {flux.reflected_ps!r}",
        f"flux_reflected_S: {flux.reflected_sh!r}",
        f"flux_imbalance_abs: {flux.imbalance_abs!r}",
        f"flux_imbalance_rel: {flux.imbalance_rel!r}",
        f"angle_sweep_gaps: {gaps_of(run_tables['cofec1'])}",
        f"freq_sweep_gaps: {gaps_of(run_tables['freq_cof'])}",
        f"warnings: {'; '.join(warnings) if warnings else 'none'}",
    ]
    return "\n".join(lines) + "\n"


def compute_run(v: InputVariant, cfg: RunConfig = RunConfig(),
                stem: str = "run") -> RunOutputs:
    """Full run for one variant: reference solve, sweeps, stresses, log.

    The variant is normalized (legacy i_eta = 0 becomes 1) and validated;
    violations raise VariantValidationError.
    """
    v, warnings = normalize_variant(v)
    report = validate_variant(v)
    if not report.ok:
        raise VariantValidationError(report)

    sol = solve_reflection(v, cfg.incidence, cfg.log_angle_deg)
    cofec1, displace = sweep_angle(v, cfg.incidence, cfg.angle_grid)
    freq_cof, freq_disp = sweep_frequency(v, cfg.incidence, cfg.log_angle_deg,
                                          cfg.eta_grid)
    arc = np.linspace(0.0, np.pi, cfg.arc_points)
    stresses = contact_stresses(v, sol, arc, cfg.arc_radius)
    tables = {"cofec1": cofec1, "displace": displace, "stresses": stresses,
              "freq_cof": freq_cof, "freq_disp": freq_disp}
    check = _render_check(v, cfg, sol, tables, warnings)
    log_text = render_log(v, sol, sol.bc, sol.dm)
    return RunOutputs(cofec1=cofec1, displace=displace, stresses=stresses,
                      freq_cof=freq_cof, freq_disp=freq_disp,
                      check=check, log_text=log_text, stem=stem)


def default_samples_dir() -> Path:
    """Bundled samples directory, overridable via WM_SAMPLES_DIR."""
    import os

    env = os.environ.get("WM_SAMPLES_DIR")
    if env:
        return Path(env)
    return Path(__file__).parent / "samples"
