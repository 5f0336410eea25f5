"""Input variants: the named parameter sets that drive every calculation.

All quantities are dimensionless. The reference scales are the contact
length, the frame shear modulus and the grain density, so the grain density
and shear modulus are both 1 in these units. Field names mirror the legacy
input-file keys exactly; that keeps the file formats trivially compatible.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

NUMERIC_FIELDS = ("n", "eta", "kf", "rhof", "anus", "viscosity", "permeabil")
FLAG_FIELDS = ("i_sealed", "i_seepage", "iDrawGraph")
COMBO_FIELDS = ("i_eta",)
ALL_FIELDS = ("ident", "comment") + NUMERIC_FIELDS + FLAG_FIELDS + COMBO_FIELDS


@dataclass(frozen=True)
class InputVariant:
    """One named, commented parameter set.

    Defaults reproduce the legacy constructor, including the out-of-range
    ``i_eta = 0`` (normalized to 1 with a warning before any computation).
    """

    ident: str = ""
    comment: str = ""
    n: float = 0.3            # porosity, must lie in (0, 1)
    eta: float = 1.0          # dimensionless angular frequency, > 0
    kf: float = 1.0           # fluid compressibility modulus, >= 0
    rhof: float = 0.3         # fluid density, >= 0
    anus: float = 0.3         # frame Poisson ratio, in (-1, 0.5)
    viscosity: float = 1e-8   # fluid viscosity, >= 0
    permeabil: float = 1.0    # permeability, > 0
    i_sealed: int = 0         # 1 = sealed surface, 0 = open pores
    i_seepage: int = 1        # 1 = viscous seepage force included
    i_eta: int = 0            # stress-table selector {1, 2}
    iDrawGraph: int = 0       # UI state; kept only for file compatibility


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_variant(v: InputVariant) -> ValidationReport:
    """Check a variant against the physical domain; never mutates it.

    Violations make the variant unusable for computation; warnings flag
    legacy quirks that are normalized on the fly (see `normalize_variant`).
    """
    bad: list[str] = []
    warn: list[str] = []
    if not v.ident:
        bad.append("ident: empty variant identifier")
    if not 0.0 < v.n < 1.0:
        bad.append(f"n: porosity out of range (0, 1), got {v.n!r}")
    if not v.eta > 0.0:
        bad.append(f"eta: frequency must be > 0, got {v.eta!r}")
    if v.kf < 0.0:
        bad.append(f"kf: fluid modulus must be >= 0, got {v.kf!r}")
    if v.rhof < 0.0:
        bad.append(f"rhof: fluid density must be >= 0, got {v.rhof!r}")
    if v.anus == 0.5:
        bad.append("anus: Poisson ratio singular (lambda undefined at 0.5)")
    elif not -1.0 < v.anus < 0.5:
        bad.append(f"anus: Poisson ratio out of range (-1, 0.5), got {v.anus!r}")
    if v.viscosity < 0.0:
        bad.append(f"viscosity: must be >= 0, got {v.viscosity!r}")
    if not v.permeabil > 0.0:
        bad.append(f"permeabil: permeability out of range, must be > 0, got {v.permeabil!r}")
    for name in ("i_sealed", "i_seepage", "iDrawGraph"):
        val = getattr(v, name)
        if val not in (0, 1):
            bad.append(f"{name}: flag must be 0 or 1, got {val!r}")
    if v.i_eta == 0:
        warn.append("i_eta: legacy value 0 is normalized to 1")
    elif v.i_eta not in (1, 2):
        bad.append(f"i_eta: selector must be 1 or 2, got {v.i_eta!r}")
    return ValidationReport(tuple(bad), tuple(warn))


def normalize_variant(v: InputVariant) -> tuple[InputVariant, tuple[str, ...]]:
    """Apply legacy normalizations (currently: i_eta 0 -> 1) and report them."""
    if v.i_eta == 0:
        return replace(v, i_eta=1), ("i_eta: legacy value 0 normalized to 1",)
    return v, ()
