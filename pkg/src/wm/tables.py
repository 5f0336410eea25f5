"""Column-oriented numeric tables and their whitespace file format.

The files are headerless whitespace-separated columns, x first, one row per
line. A row whose data values are all NaN is a gap marker: it is written as
a blank line (a plot-break marker for the viewer) and dropped again on read.
Numbers are written as shortest round-trip decimals, so write/read is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError, TableFormatError


@dataclass(frozen=True)
class SeriesTable:
    """A named table: first column is the x axis, the rest are data series."""

    name: str
    x_label: str
    columns: tuple[tuple[str, np.ndarray], ...]

    def __post_init__(self):
        if not self.columns:
            raise DomainError("a SeriesTable needs at least an x column")
        cols = tuple((label, np.asarray(values, dtype=float))
                     for label, values in self.columns)
        object.__setattr__(self, "columns", cols)
        n = len(cols[0][1])
        if any(len(values) != n for _, values in cols):
            raise DomainError(f"table {self.name!r}: column lengths differ")
        x = cols[0][1]
        if n > 1 and not np.all(np.diff(x) > 0):
            raise DomainError(f"table {self.name!r}: x column must be strictly increasing")

    @property
    def x(self) -> np.ndarray:
        return self.columns[0][1]

    @property
    def n_rows(self) -> int:
        return len(self.x)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.columns)

    def gap_rows(self) -> np.ndarray:
        """Boolean mask of rows that are gap markers (all data NaN)."""
        if len(self.columns) == 1:
            return np.zeros(self.n_rows, dtype=bool)
        data = np.column_stack([v for _, v in self.columns[1:]])
        return np.all(np.isnan(data), axis=1)

    def column(self, label: str) -> np.ndarray:
        for name, values in self.columns:
            if name == label:
                return values
        raise KeyError(label)


def _fmt(value: float) -> str:
    s = repr(float(value))
    return s[:-2] if s.endswith(".0") else s


def write_table(table: SeriesTable, path: str | Path) -> Path:
    """Write a table; gap rows become blank lines."""
    path = Path(path)
    gaps = table.gap_rows()
    vectors = [values for _, values in table.columns]
    lines = []
    for i in range(table.n_rows):
        if gaps[i]:
            lines.append("")
        else:
            lines.append(" ".join(_fmt(vec[i]) for vec in vectors))
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="ascii")
    tmp.replace(path)
    return path


def read_table(path: str | Path,
               column_roles: tuple[str | None, ...] | None = None,
               name: str | None = None) -> SeriesTable:
    """Read a headerless numeric table.

    `column_roles` gives one label per file column; a None role skips that
    column. When the x column itself is skipped the row index stands in as x.
    Blank lines (gap markers) are dropped. Ragged rows raise TableFormatError
    with the offending line number.
    """
    path = Path(path)
    rows: list[list[float]] = []
    width: int | None = None
    for line_no, raw in enumerate(path.read_text(encoding="ascii").splitlines(), 1):
        parts = raw.split()
        if not parts:
            continue
        try:
            values = [float(p) for p in parts]
        except ValueError as exc:
            raise TableFormatError(path, line_no, f"non-numeric field: {exc}") from None
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise TableFormatError(
                path, line_no, f"expected {width} columns, got {len(values)}")
        rows.append(values)
    if width is None:
        raise TableFormatError(path, 0, "empty table file")
    data = np.asarray(rows, dtype=float)
    if column_roles is None:
        column_roles = tuple(f"c{i + 1}" for i in range(width))
    if len(column_roles) != width:
        raise TableFormatError(
            path, 0, f"{len(column_roles)} roles for {width} columns")
    kept = [(label, data[:, i]) for i, label in enumerate(column_roles)
            if label is not None]
    if not kept:
        raise TableFormatError(path, 0, "all columns skipped")
    if column_roles[0] is None:
        kept.insert(0, ("row", np.arange(len(rows), dtype=float)))
    return SeriesTable(name or path.stem, kept[0][0], tuple(kept))
