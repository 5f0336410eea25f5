"""Command-line entry point: validate, compute, sweep, convert, serve.

Exit codes are a stable contract: 0 success, 1 validation failure,
2 I/O failure, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from . import errors
from .reflection import sweep_angle, sweep_frequency
from .run import (RunConfig, compute_run, default_samples_dir,
                  parse_angle_spec, parse_eta_spec)
from .report import write_run_outputs
from .store import (parse_dat, serialize_variants, variants_from_json,
                    variants_to_json)
from .tables import write_table
from .variant import InputVariant, ValidationReport, validate_variant

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_NUMERIC = 3

_VALIDATION_ERRORS = (errors.VariantValidationError, errors.SelectorError,
                      errors.EmptyVariantSetError, errors.UnknownVariantError)
_NUMERIC_ERRORS = (errors.DomainError, errors.SingularMediumError,
                   errors.NearCriticalAngleError, errors.SweepRowError,
                   np.linalg.LinAlgError)


class _StrictParseError(errors.WmError):
    pass


def _default_input() -> Path:
    return default_samples_dir() / "QQ.dat"


def _load_variants(path: Path, strict: bool) -> list[InputVariant]:
    result = parse_dat(path.read_text(encoding="utf-8"))
    if strict and result.issues:
        listing = "\n".join(f"  {issue}" for issue in result.issues)
        raise _StrictParseError(f"{path}: ignored lines in strict mode:\n{listing}")
    return result.variants


def _select(variants: list[InputVariant], selector: str) -> list[tuple[int, InputVariant]]:
    if selector == "all":
        return list(enumerate(variants))
    if re.fullmatch(r"-?\d+", selector):
        idx = int(selector)
        if not 0 <= idx < len(variants):
            raise errors.UnknownVariantError(
                f"index {idx} out of range [0, {len(variants)})")
        return [(idx, variants[idx])]
    picked = [(i, v) for i, v in enumerate(variants) if v.ident == selector]
    if not picked:
        available = ", ".join(v.ident for v in variants) or "(none)"
        raise errors.UnknownVariantError(
            f"no variant named {selector!r}; available: {available}")
    return picked


def _safe_folder_name(ident: str, taken: set[str]) -> str:
    base = re.sub(r"[^\w.\-~]", "_", ident) or "variant"
    name = base
    k = 2
    while name in taken:
        name = f"{base}__{k}"
        k += 1
    taken.add(name)
    return name


def _run_config(args) -> RunConfig:
    return RunConfig(incidence=args.incidence,
                     angle_grid=parse_angle_spec(args.angles),
                     eta_grid=parse_eta_spec(args.etas))


def cmd_validate(args) -> int:
    variants = _load_variants(args.input, args.strict)
    if not variants:
        print(f"{args.input}: no variants found (empty set)")
        return EXIT_OK
    failed = 0
    for i, v in enumerate(variants):
        report = validate_variant(v)
        status = "ok" if report.ok else "INVALID"
        print(f"[{i}] {v.ident or '(unnamed)'}: {status}")
        for msg in report.violations:
            print(f"    violation: {msg}")
        for msg in report.warnings:
            print(f"    warning: {msg}")
        failed += 0 if report.ok else 1
    return EXIT_OK if failed == 0 else EXIT_VALIDATION


def cmd_compute(args) -> int:
    variants = _load_variants(args.input, args.strict)
    cfg = _run_config(args)
    stem = args.input.stem
    taken: set[str] = set()
    for idx, v in _select(variants, args.variant):
        folder = args.out / _safe_folder_name(v.ident or f"variant{idx}", taken)
        run = compute_run(v, cfg, stem=stem)
        paths = write_run_outputs(run, folder)
        print(f"[{idx}] {v.ident}: {len(paths)} files -> {folder}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    variants = _load_variants(args.input, args.strict)
    cfg = _run_config(args)
    taken: set[str] = set()
    for idx, v in _select(variants, args.variant):
        folder = args.out / _safe_folder_name(v.ident or f"variant{idx}", taken)
        folder.mkdir(parents=True, exist_ok=True)
        if args.kind == "angle":
            cofec1, displace = sweep_angle(v, cfg.incidence, cfg.angle_grid)
            write_table(cofec1, folder / "cofec1.out")
            write_table(displace, folder / "displace.out")
        else:
            freq_cof, freq_disp = sweep_frequency(v, cfg.incidence,
                                                  cfg.log_angle_deg, cfg.eta_grid)
            write_table(freq_cof, folder / "freq_cof.out")
            write_table(freq_disp, folder / "freq_disp.out")
        print(f"[{idx}] {v.ident}: {args.kind} sweep -> {folder}")
    return EXIT_OK


def cmd_convert(args) -> int:
    text = args.input.read_text(encoding="utf-8")
    if args.to == "json":
        result = parse_dat(text)
        if args.strict and result.issues:
            listing = "\n".join(f"  {issue}" for issue in result.issues)
            raise _StrictParseError(f"{args.input}: ignored lines:\n{listing}")
        if not result.variants:
            raise errors.EmptyVariantSetError(
                f"{args.input}: no variants to convert")
        out = args.out or args.input.with_suffix(".json")
        out.write_text(variants_to_json(result.variants), encoding="utf-8")
    else:
        try:
            variants = variants_from_json(text, strict=args.strict)
        except (ValueError, KeyError, TypeError) as exc:
            raise errors.VariantValidationError(
                ValidationReport((f"bad JSON variant file: {exc}",), ())) from exc
        out = args.out or args.input.with_suffix(".dat")
        out.write_text(serialize_variants(variants), encoding="utf-8")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(samples_path=args.input if args.input.exists() else None,
                     ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wm",
        description="Plane P/SV reflection at the free surface of a "
                    "poroelastic half-space.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_default="wm_out"):
        p.add_argument("--input", "-i", type=Path, default=None,
                       help="variant .dat file (default: bundled samples/QQ.dat; "
                            "override the samples dir with WM_SAMPLES_DIR)")
        p.add_argument("--strict", action="store_true",
                       help="fail on lines the tolerant parser would skip")
        if out_default is not None:
            p.add_argument("--variant", default="all",
                           help="variant selector: ident, index or 'all'")
            p.add_argument("--out", "-o", type=Path, default=Path(out_default),
                           help="output folder")
            p.add_argument("--incidence", choices=("P", "SV"), default="P")
            p.add_argument("--angles", default="1:89:1",
                           help="angle grid MIN:MAX:STEP in degrees")
            p.add_argument("--etas", default="LOG:0.01:100:40",
                           help="frequency grid LOG:MIN:MAX:N")

    p = sub.add_parser("validate", help="validate all variants in a file")
    common(p, out_default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compute",
                       help="write the six .out files plus log per variant")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="write one sweep's tables per variant")
    common(p)
    p.add_argument("--kind", choices=("angle", "frequency"), default="angle")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("convert", help="convert between .dat and .json")
    common(p, out_default=None)
    p.add_argument("--to", choices=("json", "dat"), required=True)
    p.add_argument("--out", "-o", type=Path, default=None,
                   help="output file (default: input with swapped extension)")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("serve", help="run the HTTP service")
    common(p, out_default=None)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", type=Path, default=None,
                   help="built UI bundle to host at /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.input is None:
        args.input = _default_input()
    try:
        return args.func(args)
    except _StrictParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except errors.TableFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except _NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
