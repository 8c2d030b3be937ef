import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterEach, describe, expect, it, vi } from "vitest";

import { readFieldCsv, readProfilesCsv, readReferenceCsv } from "../src/csv.js";
import { renderIsolines } from "../src/isolines.js";
import { renderQuiver } from "../src/quiver.js";
import { renderProfiles } from "../src/profiles.js";
import { main, parseLevels } from "../src/cli.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));
const DATA = fileURLToPath(new URL("../data", import.meta.url));
const FIELDS = join(FIXTURES, "cavity_re100_fields.csv");
const PROFILES = join(FIXTURES, "cavity_re100_profiles.csv");
const DIAGNOSTICS = join(FIXTURES, "cavity_re100_diagnostics.csv");
const REFERENCE = join(DATA, "ghia1982_re100_u.csv");
const tmp = mkdtempSync(join(tmpdir(), "slns-plots-"));

const LEVELS = [-0.00001, 0.01, 0.03, 0.06, 0.09];

function countOf(svg: string, token: string): number {
  return svg.split(token).length - 1;
}

describe("renderIsolines", () => {
  it("draws contours of the snapshot and reruns byte-identically", () => {
    const field = readFieldCsv(FIELDS);
    const a = renderIsolines(field, LEVELS);
    const b = renderIsolines(field, LEVELS);
    expect(b).toBe(a);
    expect(a.startsWith("<svg ")).toBe(true);
    expect(a.endsWith("</svg>\n")).toBe(true);
    // Interior levels cross the primary vortex many times over.
    expect(countOf(a, "<line ")).toBeGreaterThan(100);
    // The negative level picks up the corner eddies and renders dashed.
    expect(a).toContain('stroke-dasharray="4 3"');
  });

  it("refuses to pick levels on its own", () => {
    const field = readFieldCsv(FIELDS);
    expect(() => renderIsolines(field, [])).toThrowError(/explicit level/);
  });

  it("renders a rest state as a valid contour-free image", () => {
    const zeros = () =>
      Array.from({ length: 3 }, () => Array.from({ length: 3 }, () => 0));
    const field = {
      header: [],
      x: [0, 0.5, 1],
      y: [0, 0.5, 1],
      omega: zeros(),
      psi: zeros(),
      u1: zeros(),
      u2: zeros(),
    };
    const svg = renderIsolines(field, [-0.1, 0, 0.1]);
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.endsWith("</svg>\n")).toBe(true);
    expect(countOf(svg, "<line ")).toBe(0);
  });
});

describe("renderQuiver", () => {
  it("draws arrows and reruns byte-identically", () => {
    const field = readFieldCsv(FIELDS);
    const a = renderQuiver(field, 5);
    const b = renderQuiver(field, 5);
    expect(b).toBe(a);
    // Each arrow is a shaft plus two head strokes.
    expect(countOf(a, "<line ")).toBeGreaterThan(300);
    expect(countOf(a, "<line ") % 3).toBe(0);
  });

  it("validates the stride", () => {
    const field = readFieldCsv(FIELDS);
    expect(() => renderQuiver(field, 0)).toThrowError(/positive integer/);
    expect(() => renderQuiver(field, 2.5)).toThrowError(/positive integer/);
  });
});

describe("renderProfiles", () => {
  it("overlays reference markers only where a column exists", () => {
    const p = readProfilesCsv(PROFILES);
    const r = readReferenceCsv(REFERENCE);
    const withRef = renderProfiles(p, r);
    const bare = renderProfiles(p);
    expect(renderProfiles(p, r)).toBe(withRef);
    // The reference table has u only: 17 markers, none on the omega panel.
    expect(countOf(withRef, "<circle ")).toBe(17);
    expect(countOf(bare, "<circle ")).toBe(0);
  });

  it("renders a rest state as flat lines", () => {
    const p = {
      header: [],
      y: [0, 0.25, 0.5, 0.75, 1],
      u: [0, 0, 0, 0, 0],
      omega: [0, 0, 0, 0, 0],
    };
    const svg = renderProfiles(p);
    const polylines = [...svg.matchAll(/<polyline points="([^"]+)"/g)];
    expect(polylines).toHaveLength(2);
    for (const m of polylines) {
      const xs = m[1].split(" ").map((pt) => pt.split(",")[0]);
      // Zero everywhere maps to one horizontal position per panel.
      expect(new Set(xs).size).toBe(1);
    }
  });
});

describe("cli", () => {
  afterEach(() => {
    vi.restoreAllMocks();
  });

  function run(args: string[]): { code: number; errors: string[] } {
    const errors: string[] = [];
    vi.spyOn(console, "error").mockImplementation((msg) => {
      errors.push(String(msg));
    });
    const code = main(args);
    return { code, errors };
  }

  it("parses level lists", () => {
    expect(parseLevels("-0.1, 0,2.5e-3")).toEqual([-0.1, 0, 0.0025]);
    expect(() => parseLevels("0.1,abc")).toThrowError(/comma-separated/);
  });

  it("writes byte-identical isoline figures across runs", () => {
    const out1 = join(tmp, "iso1.svg");
    const out2 = join(tmp, "iso2.svg");
    // Negative levels need the = form; a bare "--levels -0.1" reads as
    // a second option to the argument parser.
    const args = ["isolines", "--input", FIELDS, `--levels=${LEVELS.join(",")}`];
    expect(main([...args, "--out", out1])).toBe(0);
    expect(main([...args, "--out", out2])).toBe(0);
    expect(readFileSync(out2).equals(readFileSync(out1))).toBe(true);
    expect(readFileSync(out1, "utf-8")).toContain("streamfunction isolines");
  });

  it("writes byte-identical quiver figures across runs", () => {
    const out1 = join(tmp, "qu1.svg");
    const out2 = join(tmp, "qu2.svg");
    const args = ["quiver", "--input", FIELDS, "--stride", "5"];
    expect(main([...args, "--out", out1])).toBe(0);
    expect(main([...args, "--out", out2])).toBe(0);
    expect(readFileSync(out2).equals(readFileSync(out1))).toBe(true);
  });

  it("writes byte-identical profile figures with reference overlay", () => {
    const out1 = join(tmp, "pr1.svg");
    const out2 = join(tmp, "pr2.svg");
    const args = ["profiles", "--input", PROFILES, "--reference", REFERENCE];
    expect(main([...args, "--out", out1])).toBe(0);
    expect(main([...args, "--out", out2])).toBe(0);
    expect(readFileSync(out2).equals(readFileSync(out1))).toBe(true);
    expect(countOf(readFileSync(out1, "utf-8"), "<circle ")).toBe(17);
  });

  it("rejects unknown kinds and missing flags", () => {
    expect(run(["spectrogram", "--input", FIELDS, "--out", join(tmp, "x.svg")]).code).toBe(1);
    expect(run(["isolines", "--input", FIELDS]).code).toBe(1);
    const noLevels = run(["isolines", "--input", FIELDS, "--out", join(tmp, "x.svg")]);
    expect(noLevels.code).toBe(1);
    expect(noLevels.errors.some((e) => e.includes("--levels"))).toBe(true);
  });

  it("names the columns when fed the wrong table", () => {
    const r = run(["profiles", "--input", DIAGNOSTICS, "--out", join(tmp, "x.svg")]);
    expect(r.code).toBe(1);
    expect(r.errors.some((e) => e.includes("missing [y,u,omega]"))).toBe(true);
  });

  it("fails cleanly on unreadable input", () => {
    const r = run(["quiver", "--input", join(tmp, "absent.csv"), "--out", join(tmp, "x.svg")]);
    expect(r.code).toBe(1);
  });
});
