/** Nearest-point search for the cursor readout: always returns the closest
 *  curve point (no dead zone), skipping gap rows. */

export interface Curve {
  /** owning variant tab label, shown in the readout */
  ident: string;
  /** series label, e.g. "coefPf" */
  label: string;
  color: string;
  dash: number[];
  x: number[];
  y: (number | null)[];
}

export interface NearestHit {
  curveIndex: number;
  pointIndex: number;
  x: number;
  y: number;
  ident: string;
  label: string;
  distance: number;
}

export function nearestPoint(curves: Curve[],
                             toScreenX: (x: number) => number,
                             toScreenY: (y: number) => number,
                             px: number, py: number): NearestHit | null {
  let best: NearestHit | null = null;
  curves.forEach((curve, ci) => {
    for (let i = 0; i < curve.x.length; i++) {
      const y = curve.y[i];
      const x = curve.x[i];
      if (y === null || y === undefined || x === undefined ||
          Number.isNaN(y)) {
        continue;
      }
      const dx = toScreenX(x) - px;
      const dy = toScreenY(y) - py;
      const d = Math.hypot(dx, dy);
      if (best === null || d < best.distance) {
        best = { curveIndex: ci, pointIndex: i, x, y,
                 ident: curve.ident, label: curve.label, distance: d };
      }
    }
  });
  return best;
}
