"""Exception types shared across the package."""
from __future__ import annotations


class WmError(Exception):
    """Base class for all package-specific failures."""


class DomainError(WmError):
    """An argument is outside the physical or numeric domain of an operation."""


class SingularPoissonError(DomainError):
    """Poisson ratio at or beyond 0.5: the frame Lame constant is undefined."""


class SingularMediumError(WmError):
    """The medium parameters make the requested problem degenerate."""


class NearCriticalAngleError(WmError):
    """Boundary matrix is numerically singular close to a critical angle."""

    def __init__(self, angle_deg: float, condition: float):
        super().__init__(
            f"boundary matrix near-singular at {angle_deg:.6g} deg "
            f"(condition {condition:.3e})"
        )
        self.angle_deg = angle_deg
        self.condition = condition


class SweepRowError(WmError):
    """A sweep row failed; carries the grid index so the caller can report it."""

    def __init__(self, index: int, x: float, message: str):
        super().__init__(f"sweep row {index} (x={x:.6g}) failed: {message}")
        self.index = index
        self.x = x


class SelectorError(WmError):
    """A discrete selector (mode, i_eta, ...) has an unsupported value."""


class VariantValidationError(WmError):
    """A variant failed validation; carries the report."""

    def __init__(self, report):
        super().__init__("; ".join(report.violations) or "invalid variant")
        self.report = report


class EmptyVariantSetError(WmError):
    """Refusing to serialize or save an empty variant set."""


class UnknownVariantError(WmError):
    """A variant selector did not match any variant in the set."""


class TableFormatError(WmError):
    """A numeric table file is malformed; carries the offending line number."""

    def __init__(self, path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no
