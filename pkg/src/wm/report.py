"""Run log rendering and the six-file run output contract.

A compute run always produces exactly six ``.out`` files (check, cofec1,
freq_cof, freq_disp, stresses, displace) plus the text log named
``<stem>~Log.txt``. A small ``manifest.txt`` sidecar documents the column
meanings; it is additive and not part of the legacy contract.

Log numbers use 7 significant digits, fixed notation for 1e-3 <= |x| < 1e7
and scientific outside that range; complex values render as ``(re,im)``.
Equality with the legacy log is numeric, not textual.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .core import BiotConstants, DensityMatrix
from .errors import DomainError
from .reflection import ReflectionSolution, decaying_representative
from .tables import SeriesTable, write_table
from .variant import InputVariant

OUT_FILE_NAMES = ("check.out", "cofec1.out", "freq_cof.out", "freq_disp.out",
                  "stresses.out", "displace.out")

TABLE_COLUMN_DOC = {
    "cofec1": "angle coefPf coefPs coefSh",
    "displace": "angle cabs(uux) cabs(uuz)",
    "freq_cof": "eta coefPf coefPs coefSh",
    "freq_disp": "eta cabs(uux) cabs(uuz)",
}


def fmt_log_real(x: float) -> str:
    if x == 0:
        return "0.0000000E+00"
    ax = abs(x)
    if 1e-3 <= ax < 1e7:
        return format(x, "#.7g")
    return format(x, ".6E")


def fmt_log_complex(z: complex) -> str:
    return f"({fmt_log_real(z.real)},{fmt_log_real(z.imag)})"


def render_log(v: InputVariant, sol: ReflectionSolution,
               bc: BiotConstants, dm: DensityMatrix) -> str:
    """Render the per-variant run log in the legacy field order.

    ``c_inc_S`` is the shear-wave unit-displacement normalizer 1/l_sh (a
    medium property, independent of the run's incidence); ``A`` is the
    modulus-matrix determinant P*R - Q^2. Compat notes at the end carry the
    fields the legacy log omitted (n, eta, incidence, angle, drainage) plus
    lambda and A_biot.
    """
    r = fmt_log_real
    c = fmt_log_complex
    cd = sol.densities
    c_inc_s = 1.0 / decaying_representative(sol.waves.l_sh)
    lines = [
        f"Log: {v.ident} ({v.comment})",
        f"kf= {r(v.kf)}",
        f"rhof= {r(v.rhof)}",
        f"anus= {r(v.anus)}",
        f"viscosity= {r(v.viscosity)}",
        f"permeabil= {r(v.permeabil)}",
        f"i_sealed= {v.i_sealed}",
        f"i_seepage= {v.i_seepage}",
        f"i_eta= {v.i_eta}",
        "",
        "// Output values:",
        f"freq= {r(sol.omega)}",
        f"g111= {c(sol.g111)}",
        f"g112= {c(sol.g112)}",
        f"g12= {c(sol.g12)}",
        f"g211= {c(sol.g211)}",
        f"g212= {c(sol.g212)}",
        f"g22= {c(sol.g22)}",
        f"g411= {c(sol.g411)}",
        f"g412= {c(sol.g412)}",
        f"g42= {c(sol.g42)}",
        f"g611= {c(sol.g611)}",
        f"g612= {c(sol.g612)}",
        f"c_inc_S= {c(c_inc_s)}",
        f"c_ref_Pf= {c(sol.c_ref_Pf)}",
        f"c_ref_Ps= {c(sol.c_ref_Ps)}",
        f"coeslow= {c(sol.coeslow)}",
        f"c_ref_S= {c(sol.c_ref_S)}",
        f"Q= {r(bc.Q)}",
        f"R= {r(bc.R)}",
        f"rho11= {c(cd.cr11)}",
        f"rho12= {c(cd.cr12)}",
        f"rho22= {c(cd.cr22)}",
        f"P= {r(bc.P)}",
        f"A= {r(bc.modulus_det)}",
        "",
        "// Compat notes (not part of the legacy log):",
        f"// n= {r(v.n)} eta= {r(v.eta)}",
        f"// lambda= {r(bc.lam)} A_biot= {r(bc.A_biot)} (A above is P*R - Q^2)",
        f"// incidence= {sol.incidence} angle_deg= {r(sol.angle_deg)} "
        f"drainage= {sol.drainage}",
        "// c_inc_S is the shear normalizer 1/l_sh; c_inc for this run "
        f"is {c(sol.c_inc)}",
        "",
    ]
    return "\n".join(lines)


@dataclass(frozen=True)
class RunOutputs:
    """The five numeric tables plus the check report and log of one run."""

    cofec1: SeriesTable
    displace: SeriesTable
    stresses: SeriesTable
    freq_cof: SeriesTable
    freq_disp: SeriesTable
    check: str
    log_text: str
    stem: str = "run"

    def tables(self) -> dict[str, SeriesTable]:
        return {"cofec1": self.cofec1, "displace": self.displace,
                "stresses": self.stresses, "freq_cof": self.freq_cof,
                "freq_disp": self.freq_disp}


def write_run_outputs(run: RunOutputs, folder: str | Path) -> dict[str, Path]:
    """Write the six .out files, the log and the manifest into `folder`.

    Each file is written atomically (temp + rename). Returns the manifest
    of written paths keyed by logical name.
    """
    folder = Path(folder)
    folder.mkdir(parents=True, exist_ok=True)
    for name, table in run.tables().items():
        if table.n_rows == 0:
            raise DomainError(f"table {name!r} is empty; refusing to write a run")

    paths: dict[str, Path] = {}
    for name, table in run.tables().items():
        paths[name] = write_table(table, folder / f"{name}.out")

    def _write_text(name: str, fname: str, text: str) -> None:
        tmp = folder / (fname + ".tmp")
        tmp.write_text(text, encoding="utf-8")
        tmp.replace(folder / fname)
        paths[name] = folder / fname

    _write_text("check", "check.out", run.check)
    _write_text("log", f"{run.stem}~Log.txt", run.log_text)

    manifest = [f"log: {run.stem}~Log.txt", "check: check.out"]
    for name in ("cofec1", "displace", "freq_cof", "freq_disp"):
        manifest.append(f"{name}: {name}.out")
        manifest.append(f"{name}.columns: {TABLE_COLUMN_DOC[name]}")
    manifest.append("stresses: stresses.out")
    manifest.append("stresses.columns: " + " ".join(run.stresses.labels))
    _write_text("manifest", "manifest.txt", "\n".join(manifest) + "\n")
    return paths
