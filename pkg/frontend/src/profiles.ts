/**
 * Mid-line profile figure: u and omega against the line coordinate in
 * two side-by-side panels, with optional reference markers overlaid.
 */
import { Profiles, ReferencePoints } from "./csv.js";
import { circle, document, frame, linearScale, polyline, text, Scale } from "./svg.js";

const MARGIN = 48;
const PANEL_W = 300;
const PANEL_H = 420;
const GAP = 56;

function padded(values: number[]): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = 0.05 * (hi - lo);
  return [lo - pad, hi + pad];
}

function panel(
  x0: number,
  label: string,
  coord: number[],
  values: number[],
  refCoord: number[] | undefined,
  refValues: number[] | undefined,
  totalW: number,
  totalH: number,
): string[] {
  const all = refValues ? values.concat(refValues) : values;
  const sv: Scale = linearScale(padded(all), [x0, x0 + PANEL_W]);
  const sc: Scale = linearScale(
    [coord[0], coord[coord.length - 1]],
    [MARGIN + PANEL_H, MARGIN],
  );
  const body = frame(x0, MARGIN, PANEL_W, PANEL_H, totalW, totalH).slice(1);
  body.push(
    polyline(
      coord.map((c, k) => [sv(values[k]), sc(c)] as [number, number]),
      { stroke: "black", "stroke-width": 1.2 },
    ),
  );
  if (refCoord && refValues) {
    for (let k = 0; k < refCoord.length; k++) {
      body.push(
        circle(sv(refValues[k]), sc(refCoord[k]), 3, {
          fill: "none",
          stroke: "black",
          "stroke-width": 1,
        }),
      );
    }
  }
  body.push(text(x0, MARGIN - 10, label));
  return body;
}

export function renderProfiles(p: Profiles, ref?: ReferencePoints): string {
  const W = 2 * PANEL_W + GAP + 2 * MARGIN;
  const H = PANEL_H + 2 * MARGIN;
  const body: string[] = [
    // Single background rect, then both panels' frames and contents.
    frame(MARGIN, MARGIN, PANEL_W, PANEL_H, W, H)[0],
  ];
  body.push(
    ...panel(MARGIN, "u along mid line", p.y, p.u, ref?.coordinate, ref?.u, W, H),
    ...panel(
      MARGIN + PANEL_W + GAP,
      "omega along mid line",
      p.y,
      p.omega,
      ref?.coordinate,
      ref?.omega,
      W,
      H,
    ),
  );
  return document(W, H, body);
}
