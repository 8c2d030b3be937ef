/**
 * Flow-field quiver figure: one arrow per stride-th node, uniformly
 * scaled so the fastest sampled arrow spans about one stride cell.
 */
import { FieldGrid } from "./csv.js";
import { document, frame, line, linearScale, text } from "./svg.js";

const MARGIN = 48;
const PLOT = 480;

export function renderQuiver(field: FieldGrid, stride = 4): string {
  if (!Number.isInteger(stride) || stride < 1) {
    throw new Error(`stride must be a positive integer, got ${stride}`);
  }
  const W = PLOT + 2 * MARGIN;
  const H = PLOT + 2 * MARGIN;
  const nx = field.x.length;
  const ny = field.y.length;
  const sx = linearScale([field.x[0], field.x[nx - 1]], [MARGIN, MARGIN + PLOT]);
  const sy = linearScale([field.y[0], field.y[ny - 1]], [MARGIN + PLOT, MARGIN]);

  let maxSpeed = 0;
  for (let i = 0; i < nx; i += stride) {
    for (let j = 0; j < ny; j += stride) {
      const s = Math.hypot(field.u1[i][j], field.u2[i][j]);
      if (s > maxSpeed) maxSpeed = s;
    }
  }
  // Pixel length of the fastest arrow: one stride worth of mean spacing.
  const arrowPx = (stride * PLOT) / (nx - 1);
  const scale = maxSpeed > 0 ? arrowPx / maxSpeed : 0;

  const body = frame(MARGIN, MARGIN, PLOT, PLOT, W, H);
  for (let i = 0; i < nx; i += stride) {
    for (let j = 0; j < ny; j += stride) {
      const u = field.u1[i][j];
      const v = field.u2[i][j];
      const speed = Math.hypot(u, v);
      if (speed * scale < 0.5) continue; // sub-pixel arrows only clutter
      const x0 = sx(field.x[i]);
      const y0 = sy(field.y[j]);
      // Velocity y component points up; SVG y points down.
      const dx = u * scale;
      const dy = -v * scale;
      const x1 = x0 + dx;
      const y1 = y0 + dy;
      body.push(line(x0, y0, x1, y1, { stroke: "black", "stroke-width": 0.7 }));
      // Two-stroke head at 150 degrees off the shaft direction.
      const ang = Math.atan2(dy, dx);
      const headLen = Math.min(4, 0.4 * speed * scale);
      for (const off of [Math.PI - 0.5, -(Math.PI - 0.5)]) {
        body.push(
          line(
            x1,
            y1,
            x1 + headLen * Math.cos(ang + off),
            y1 + headLen * Math.sin(ang + off),
            { stroke: "black", "stroke-width": 0.7 },
          ),
        );
      }
    }
  }
  body.push(text(MARGIN, MARGIN - 10, "flow field"));
  return document(W, H, body);
}
