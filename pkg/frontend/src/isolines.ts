/**
 * Streamfunction isoline figure.
 *
 * Levels are always caller-supplied: benchmark figures use fixed level
 * sets, and silently auto-picking levels would make plots from
 * different runs incomparable.
 */
import { FieldGrid } from "./csv.js";
import { contourSegments } from "./contour.js";
import { document, frame, line, linearScale, text, SvgAttrs } from "./svg.js";

const MARGIN = 48;
const PLOT = 480;

export function renderIsolines(field: FieldGrid, levels: number[]): string {
  if (levels.length === 0) {
    throw new Error("isoline plot needs at least one explicit level");
  }
  const W = PLOT + 2 * MARGIN;
  const H = PLOT + 2 * MARGIN;
  const nx = field.x.length;
  const ny = field.y.length;
  const sx = linearScale([field.x[0], field.x[nx - 1]], [MARGIN, MARGIN + PLOT]);
  // SVG y grows downward; flip so the domain's top edge is on top.
  const sy = linearScale([field.y[0], field.y[ny - 1]], [MARGIN + PLOT, MARGIN]);

  const body = frame(MARGIN, MARGIN, PLOT, PLOT, W, H);
  for (const level of levels) {
    const dash: SvgAttrs = level < 0 ? { "stroke-dasharray": "4 3" } : {};
    for (const s of contourSegments(field.x, field.y, field.psi, level)) {
      body.push(
        line(sx(s.x1), sy(s.y1), sx(s.x2), sy(s.y2), {
          stroke: "black",
          "stroke-width": 0.8,
          ...dash,
        }),
      );
    }
  }
  body.push(text(MARGIN, MARGIN - 10, "streamfunction isolines"));
  body.push(text(MARGIN, MARGIN + PLOT + 24, `x in [${field.x[0]}, ${field.x[nx - 1]}]`));
  body.push(
    text(MARGIN, MARGIN + PLOT + 40, `levels: ${levels.map((v) => String(v)).join(", ")}`),
  );
  return document(W, H, body);
}
