/**
 * Minimal deterministic SVG assembly.
 *
 * All coordinates pass through a fixed-precision formatter, no
 * timestamps or random ids are embedded, and attribute order is the
 * literal order in each template, so a rerun on identical input yields
 * identical bytes.
 */

/** Fixed three-decimal pixel formatting ("-0.000" normalized to "0.000"). */
export function px(v: number): string {
  const s = v.toFixed(3);
  return s === "-0.000" ? "0.000" : s;
}

/** Linear map from a data interval to a pixel interval. */
export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const k = (r1 - r0) / (d1 - d0);
  const f = ((v: number) => r0 + (v - d0) * k) as Scale;
  f.domain = domain;
  f.range = range;
  return f;
}

export interface SvgAttrs {
  [name: string]: string | number;
}

function attrs(a: SvgAttrs): string {
  return Object.entries(a)
    .map(([k, v]) => ` ${k}="${v}"`)
    .join("");
}

export function tag(name: string, a: SvgAttrs, body = ""): string {
  return body === ""
    ? `<${name}${attrs(a)}/>`
    : `<${name}${attrs(a)}>${body}</${name}>`;
}

export function line(x1: number, y1: number, x2: number, y2: number, a: SvgAttrs): string {
  return tag("line", { x1: px(x1), y1: px(y1), x2: px(x2), y2: px(y2), ...a });
}

export function polyline(points: Array<[number, number]>, a: SvgAttrs): string {
  const pts = points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
  return tag("polyline", { points: pts, fill: "none", ...a });
}

export function circle(cx: number, cy: number, r: number, a: SvgAttrs): string {
  return tag("circle", { cx: px(cx), cy: px(cy), r: px(r), ...a });
}

export function text(x: number, y: number, content: string, a: SvgAttrs = {}): string {
  return tag(
    "text",
    { x: px(x), y: px(y), "font-family": "sans-serif", "font-size": 11, ...a },
    content,
  );
}

export function document(width: number, height: number, body: string[]): string {
  const head =
    `<svg xmlns="http://www.w3.org/2000/svg" ` +
    `width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">`;
  return [head, ...body, "</svg>", ""].join("\n");
}

/** Plot frame: white background plus an axes box around the data area. */
export function frame(x0: number, y0: number, w: number, h: number, totalW: number, totalH: number): string[] {
  return [
    tag("rect", { x: 0, y: 0, width: totalW, height: totalH, fill: "white" }),
    tag("rect", {
      x: px(x0),
      y: px(y0),
      width: px(w),
      height: px(h),
      fill: "none",
      stroke: "black",
      "stroke-width": 1,
    }),
  ];
}
