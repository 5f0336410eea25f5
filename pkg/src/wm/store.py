"""Variant files: parse, serialize, edit, clone, delete, backup rotation.

The grammar reproduces the legacy loader: lines of ``key=value`` pairs,
leading blanks skipped, lines whose first non-blank character is '/' are
comments, a key ends at the first blank/tab/'=' and anything between the
key and the '=' is discarded. ``VariantIdent`` starts a new variant with
constructor defaults; keys seen before the first ident are dropped. Numeric
values parse permissively (longest valid prefix, like sscanf), and a failed
parse leaves the previous value untouched. The tolerant parser never fails;
callers wanting strictness inspect the collected issues.
"""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import EmptyVariantSetError, SelectorError
from .variant import (ALL_FIELDS, COMBO_FIELDS, FLAG_FIELDS, NUMERIC_FIELDS,
                      InputVariant)

_KEY_END = re.compile(r"[^ \t=]*")
_FLOAT_PREFIX = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eEdD][+-]?\d+)?")
_INT_PREFIX = re.compile(r"[+-]?\d+")

CLONE_SUFFIX = "~Clone"
LEGACY_INPUT_SUFFIXES = {1: "~SEE-REF.txt", 2: "~REF_COF.txt"}


@dataclass(frozen=True)
class ParseIssue:
    line_no: int
    line: str
    reason: str

    def __str__(self) -> str:
        return f"line {self.line_no}: {self.reason}: {self.line.strip()!r}"


@dataclass
class ParseResult:
    variants: list[InputVariant]
    issues: list[ParseIssue]


def _float_prefix(s: str) -> float | None:
    m = _FLOAT_PREFIX.match(s)
    if not m:
        return None
    return float(m.group(0).replace("d", "e").replace("D", "e"))


def _int_prefix(s: str) -> int | None:
    m = _INT_PREFIX.match(s)
    return int(m.group(0)) if m else None


def parse_dat(text: str) -> ParseResult:
    """Tolerant parse of variant-file text, collecting skipped-line issues."""
    raws: list[dict] = []
    issues: list[ParseIssue] = []
    cur: dict | None = None
    for line_no, raw in enumerate(text.splitlines(), 1):
        p = raw.lstrip(" \t")
        if not p:
            continue
        if p.startswith("/"):
            continue
        key_end = _KEY_END.match(p).end()
        rest = p[key_end:]
        if not rest:
            issues.append(ParseIssue(line_no, raw, "no '=' separator"))
            continue
        if rest[0] == "=":
            value = rest[1:]
        else:
            eq = rest.find("=")
            if eq < 0:
                issues.append(ParseIssue(line_no, raw, "no '=' separator"))
                continue
            value = rest[eq + 1:]
        key = p[:key_end].strip()
        value = value.strip()

        if key == "VariantIdent":
            cur = {"ident": value}
            raws.append(cur)
            continue
        if key == "VariantComment":
            if cur is None:
                issues.append(ParseIssue(line_no, raw, "comment before any VariantIdent"))
            else:
                cur["comment"] = value
            continue
        if cur is None:
            issues.append(ParseIssue(line_no, raw, "key before any VariantIdent"))
            continue
        if key in NUMERIC_FIELDS:
            num = _float_prefix(value)
            if num is None:
                issues.append(ParseIssue(line_no, raw, f"unparseable number for {key!r}"))
            else:
                cur[key] = num
        elif key in FLAG_FIELDS or key in COMBO_FIELDS:
            num = _int_prefix(value)
            if num is None:
                issues.append(ParseIssue(line_no, raw, f"unparseable integer for {key!r}"))
            else:
                cur[key] = num
        else:
            issues.append(ParseIssue(line_no, raw, f"unknown key {key!r}"))
    return ParseResult([InputVariant(**d) for d in raws], issues)


def parse_variants(text: str) -> list[InputVariant]:
    """Parse variant-file text, silently skipping whatever the grammar skips."""
    return parse_dat(text).variants


def _g(x: float) -> str:
    # shortest decimal that round-trips; integral values drop the '.0'
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def serialize_variants(variants) -> str:
    """Serialize in the exact legacy key order and block layout."""
    if not variants:
        raise EmptyVariantSetError("refusing to serialize an empty variant set")
    parts = []
    for v in variants:
        parts.append(
            "\n//-----"
            f"\nVariantIdent={v.ident}"
            f"\nVariantComment={v.comment}"
            f"\neta={_g(v.eta)}"
            f"\nkf={_g(v.kf)}"
            f"\nrhof={_g(v.rhof)}"
            f"\nanus={_g(v.anus)}"
            f"\nn={_g(v.n)}"
            f"\nviscosity={_g(v.viscosity)}"
            f"\npermeabil={_g(v.permeabil)}"
            f"\ni_sealed={v.i_sealed}"
            f"\ni_seepage={v.i_seepage}"
            f"\ni_eta={v.i_eta}"
            "\n"
            f"\niDrawGraph={v.iDrawGraph}"
            "\n"
        )
    return "".join(parts)


def variants_to_json(variants) -> str:
    payload = {"variants": [{name: getattr(v, name) for name in ALL_FIELDS}
                            for v in variants]}
    return json.dumps(payload, indent=2) + "\n"


def variants_from_json(text: str, strict: bool = False) -> list[InputVariant]:
    """Read the JSON form; unknown keys are rejected in strict mode."""
    payload = json.loads(text)
    items = payload["variants"] if isinstance(payload, dict) else payload
    out = []
    for item in items:
        unknown = set(item) - set(ALL_FIELDS)
        if unknown and strict:
            raise ValueError(f"unknown variant keys: {sorted(unknown)}")
        kept = {k: item[k] for k in ALL_FIELDS if k in item}
        for name in NUMERIC_FIELDS:
            if name in kept:
                kept[name] = float(kept[name])
        for name in FLAG_FIELDS + COMBO_FIELDS:
            if name in kept:
                kept[name] = int(kept[name])
        out.append(InputVariant(**kept))
    return out


def emit_legacy_input(v: InputVariant, mode: int) -> str:
    """Render the one-variant temp input files of the legacy calculation core.

    Mode 1 carries (n, kf, rhof, anus) and folds the flags onto the
    viscosity line; mode 2 adds eta and permeabil. Layout (including the
    double blank line and the trailing comment block) is byte-faithful.
    """
    if mode not in (1, 2):
        raise SelectorError(f"legacy input mode must be 1 or 2, got {mode!r}")
    if mode == 1:
        return (f"{_g(v.n)} {_g(v.kf)} {_g(v.rhof)} {_g(v.anus)}\n"
                f"{_g(v.viscosity)} "
                f"{v.i_sealed} {v.i_seepage} {v.i_eta}\n"
                "\n"
                "\n// n, kf, rhof, anus"
                "\n// viscosity, j"
                "\n// i_sealed, i_seepage, i_eta")
    return (f"{_g(v.n)} {_g(v.eta)} {_g(v.kf)} {_g(v.rhof)} {_g(v.anus)}\n"
            f"{_g(v.viscosity)} {_g(v.permeabil)}\n"
            f"{v.i_sealed} {v.i_seepage} {v.i_eta}\n"
            "\n"
            "\n// n, eta, kf, rhof, anus"
            "\n// viscosity, permeabil"
            "\n// i_sealed, i_seepage, i_eta")


def legacy_input_path(input_path: str | Path, mode: int) -> Path:
    """File name of the legacy temp input next to a variant file."""
    if mode not in LEGACY_INPUT_SUFFIXES:
        raise SelectorError(f"legacy input mode must be 1 or 2, got {mode!r}")
    p = Path(input_path)
    return p.with_name(p.stem + LEGACY_INPUT_SUFFIXES[mode])


@dataclass
class VariantSet:
    """Ordered, selectable collection of variants bound to an optional file.

    Single-owner mutable aggregate: all mutation happens through these
    methods on one logical thread; `modified` tracks unsaved changes.
    """

    path: Path | None = None
    variants: list[InputVariant] = field(default_factory=list)
    selected: int | None = None
    modified: bool = False

    @classmethod
    def load(cls, path: str | Path) -> "VariantSet":
        path = Path(path)
        variants = parse_variants(path.read_text(encoding="utf-8"))
        selected = len(variants) - 1 if variants else None
        return cls(path=path, variants=variants, selected=selected, modified=False)

    def __len__(self) -> int:
        return len(self.variants)

    def _check_index(self, idx: int) -> None:
        if not 0 <= idx < len(self.variants):
            raise IndexError(f"variant index {idx} out of range [0, {len(self.variants)})")

    def replace_variant(self, idx: int, v: InputVariant) -> None:
        self._check_index(idx)
        self.variants[idx] = v
        self.modified = True

    def clone(self, idx: int) -> InputVariant:
        """Append a deep copy with the '~Clone' ident suffix and select it."""
        self._check_index(idx)
        dup = replace(self.variants[idx],
                      ident=self.variants[idx].ident + CLONE_SUFFIX)
        self.variants.append(dup)
        self.selected = len(self.variants) - 1
        self.modified = True
        return dup

    def delete(self, idx: int) -> None:
        """Remove a variant; the selection clamps to the old index or the end."""
        self._check_index(idx)
        del self.variants[idx]
        if not self.variants:
            self.selected = None
        else:
            self.selected = min(idx, len(self.variants) - 1)
        self.modified = True

    def serialize(self) -> str:
        return serialize_variants(self.variants)

    def save(self, path: str | Path | None = None) -> Path:
        """Write the set, rotating any existing file to a '.bak' sibling."""
        target = Path(path) if path is not None else self.path
        if target is None:
            raise EmptyVariantSetError("no path to save to")
        text = self.serialize()
        if target.exists():
            bak = target.with_suffix(".bak")
            bak.unlink(missing_ok=True)
            os.replace(target, bak)
        target.write_text(text, encoding="utf-8")
        self.path = target
        self.modified = False
        return target
