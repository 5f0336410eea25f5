/** Canvas multi-curve plot with axes, gap-aware polylines and a crosshair
 *  marker for the nearest-point readout. */
import { Curve, NearestHit, nearestPoint } from "./nearest.js";

const MARGIN = { left: 56, right: 16, top: 14, bottom: 34 };

export class Plot {
  private curves: Curve[] = [];
  private hit: NearestHit | null = null;
  private xmin = 0;
  private xmax = 1;
  private ymin = 0;
  private ymax = 1;

  constructor(private readonly canvas: HTMLCanvasElement,
              private readonly onReadout: (hit: NearestHit | null) => void) {
    canvas.addEventListener("mousemove", (ev) => this.handleMove(ev));
    canvas.addEventListener("mouseleave", () => {
      this.hit = null;
      this.onReadout(null);
      this.draw();
    });
  }

  setCurves(curves: Curve[]): void {
    this.curves = curves;
    this.autoScale();
    this.hit = null;
    this.draw();
  }

  private autoScale(): void {
    let xs: number[] = [];
    let ys: number[] = [];
    for (const c of this.curves) {
      xs = xs.concat(c.x.filter((v) => Number.isFinite(v)));
      ys = ys.concat(c.y.filter((v): v is number =>
        v !== null && Number.isFinite(v)));
    }
    if (xs.length === 0 || ys.length === 0) {
      this.xmin = 0; this.xmax = 1; this.ymin = 0; this.ymax = 1;
      return;
    }
    this.xmin = Math.min(...xs);
    this.xmax = Math.max(...xs);
    this.ymin = Math.min(...ys);
    this.ymax = Math.max(...ys);
    if (this.xmax === this.xmin) this.xmax = this.xmin + 1;
    if (this.ymax === this.ymin) this.ymax = this.ymin + 1;
    const pad = 0.05 * (this.ymax - this.ymin);
    this.ymin -= pad;
    this.ymax += pad;
  }

  toScreenX = (x: number): number => {
    const w = this.canvas.width - MARGIN.left - MARGIN.right;
    return MARGIN.left + ((x - this.xmin) / (this.xmax - this.xmin)) * w;
  };

  toScreenY = (y: number): number => {
    const h = this.canvas.height - MARGIN.top - MARGIN.bottom;
    return MARGIN.top + (1 - (y - this.ymin) / (this.ymax - this.ymin)) * h;
  };

  private handleMove(ev: MouseEvent): void {
    const rect = this.canvas.getBoundingClientRect();
    const px = (ev.clientX - rect.left) * (this.canvas.width / rect.width);
    const py = (ev.clientY - rect.top) * (this.canvas.height / rect.height);
    this.hit = nearestPoint(this.curves, this.toScreenX, this.toScreenY, px, py);
    this.onReadout(this.hit);
    this.draw();
  }

  draw(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const { width, height } = this.canvas;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#ffffff";
    ctx.fillRect(0, 0, width, height);

    this.drawAxes(ctx);
    if (this.curves.length === 0) {
      ctx.fillStyle = "#777";
      ctx.font = "14px sans-serif";
      ctx.textAlign = "center";
      ctx.fillText("nothing to draw: tick “draw” and press " +
                   "“Recalc & Draw results”", width / 2, height / 2);
      return;
    }
    for (const curve of this.curves) {
      ctx.strokeStyle = curve.color;
      ctx.setLineDash(curve.dash);
      ctx.lineWidth = 1.6;
      ctx.beginPath();
      let pen = false;
      for (let i = 0; i < curve.x.length; i++) {
        const y = curve.y[i];
        const x = curve.x[i];
        if (y === null || y === undefined || x === undefined ||
            !Number.isFinite(y) || !Number.isFinite(x)) {
          pen = false; // gap row: break the polyline
          continue;
        }
        const sx = this.toScreenX(x);
        const sy = this.toScreenY(y);
        if (pen) ctx.lineTo(sx, sy);
        else ctx.moveTo(sx, sy);
        pen = true;
      }
      ctx.stroke();
      ctx.setLineDash([]);
    }
    if (this.hit) {
      const sx = this.toScreenX(this.hit.x);
      const sy = this.toScreenY(this.hit.y);
      ctx.strokeStyle = "#333";
      ctx.beginPath();
      ctx.arc(sx, sy, 4.5, 0, 2 * Math.PI);
      ctx.stroke();
    }
  }

  private drawAxes(ctx: CanvasRenderingContext2D): void {
    const { width, height } = this.canvas;
    const x0 = MARGIN.left;
    const y0 = height - MARGIN.bottom;
    ctx.strokeStyle = "#bbb";
    ctx.fillStyle = "#444";
    ctx.font = "11px sans-serif";
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.moveTo(x0, MARGIN.top);
    ctx.lineTo(x0, y0);
    ctx.lineTo(width - MARGIN.right, y0);
    ctx.stroke();
    const xticks = 6;
    const yticks = 5;
    ctx.textAlign = "center";
    for (let i = 0; i <= xticks; i++) {
      const x = this.xmin + ((this.xmax - this.xmin) * i) / xticks;
      ctx.fillText(fmtTick(x), this.toScreenX(x), y0 + 16);
    }
    ctx.textAlign = "right";
    for (let i = 0; i <= yticks; i++) {
      const y = this.ymin + ((this.ymax - this.ymin) * i) / yticks;
      ctx.fillText(fmtTick(y), x0 - 6, this.toScreenY(y) + 4);
    }
  }

  /** PNG export replaces the desktop tool's clipboard copy. */
  downloadPng(filename: string): void {
    this.canvas.toBlob((blob) => {
      if (!blob) return;
      const url = URL.createObjectURL(blob);
      const a = document.createElement("a");
      a.href = url;
      a.download = filename;
      a.click();
      URL.revokeObjectURL(url);
    });
  }
}

function fmtTick(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a < 1e-3 || a >= 1e5)) return v.toExponential(1);
  return Number(v.toPrecision(4)).toString();
}
