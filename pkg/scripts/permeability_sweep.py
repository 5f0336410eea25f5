#!/usr/bin/env python3
"""Normalized wave speeds against frequency for several permeabilities.

Fixed porosity (default 0.4), seepage on: one velocity table per
permeability value, written as whitespace .out-style files ready for the
plot viewer. The slow wave is the interesting curve here: its speed climbs
with frequency once the viscous coupling stops pinning the fluid to the
frame.
"""
import argparse
from dataclasses import replace
from pathlib import Path

import numpy as np

from wm import InputVariant, normalized_velocities, write_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--porosity", type=float, default=0.4)
    ap.add_argument("--viscosity", type=float, default=1e-3)
    ap.add_argument("--permeabilities", type=float, nargs="+",
                    default=[1e-4, 1e-3, 1e-2, 1e-1, 1.0])
    ap.add_argument("--etas", type=str, default="0.01:100:60",
                    help="log grid MIN:MAX:N")
    ap.add_argument("--out", type=Path, default=Path("velocity_sweep"))
    args = ap.parse_args()

    lo, hi, num = args.etas.split(":")
    grid = np.geomspace(float(lo), float(hi), int(num))
    args.out.mkdir(parents=True, exist_ok=True)

    base = InputVariant(ident="sweep", n=args.porosity, kf=1.0, rhof=0.3,
                        anus=0.3, viscosity=args.viscosity, permeabil=1.0,
                        i_sealed=0, i_seepage=1, i_eta=1)
    for perm in args.permeabilities:
        table = normalized_velocities(replace(base, permeabil=perm), grid)
        path = args.out / f"velocities_k{perm:g}.out"
        write_table(table, path)
        vs = table.column("Vs")
        print(f"permeabil={perm:<8g} Vs range [{vs.min():.4f}, {vs.max():.4f}]"
              f" -> {path}")


if __name__ == "__main__":
    main()
