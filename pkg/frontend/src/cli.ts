#!/usr/bin/env node
/**
 * Command line entry: `slns-plots <kind> --input run.csv --out fig.svg`.
 *
 * Kinds map one-to-one onto the renderers: `isolines` and `quiver`
 * read a field snapshot CSV, `profiles` reads a profiles CSV plus an
 * optional reference-marker CSV.  Rendering is a pure function of the
 * inputs, so rerunning a command reproduces its output byte for byte.
 */
import { parseArgs } from "node:util";
import { writeFileSync } from "node:fs";

import { readFieldCsv, readProfilesCsv, readReferenceCsv } from "./csv.js";
import { renderIsolines } from "./isolines.js";
import { renderQuiver } from "./quiver.js";
import { renderProfiles } from "./profiles.js";

const USAGE = `usage: slns-plots <isolines|quiver|profiles> --input CSV --out SVG
  isolines:  --levels=v1,v2,...   (required; explicit streamfunction levels;
                                   the = form keeps negative levels parseable)
  quiver:    --stride N           (default 4; node subsampling)
  profiles:  --reference CSV      (optional overlay markers)`;

export function parseLevels(raw: string): number[] {
  const levels = raw.split(",").map((s) => Number(s.trim()));
  if (levels.length === 0 || levels.some((v) => !Number.isFinite(v))) {
    throw new Error(`levels must be a comma-separated number list, got "${raw}"`);
  }
  return levels;
}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        input: { type: "string", short: "i" },
        out: { type: "string", short: "o" },
        levels: { type: "string" },
        stride: { type: "string" },
        reference: { type: "string" },
      },
    });
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    console.error(USAGE);
    return 1;
  }
  const kind = parsed.positionals[0];
  const { input, out, levels, stride, reference } = parsed.values;
  if (!kind || parsed.positionals.length !== 1 || !input || !out) {
    console.error(USAGE);
    return 1;
  }

  try {
    let svg: string;
    switch (kind) {
      case "isolines": {
        if (!levels) {
          throw new Error("isolines needs --levels (explicit values, no auto-picking)");
        }
        svg = renderIsolines(readFieldCsv(input), parseLevels(levels));
        break;
      }
      case "quiver": {
        const n = stride === undefined ? 4 : Number(stride);
        svg = renderQuiver(readFieldCsv(input), n);
        break;
      }
      case "profiles": {
        const ref = reference === undefined ? undefined : readReferenceCsv(reference);
        svg = renderProfiles(readProfilesCsv(input), ref);
        break;
      }
      default:
        console.error(`unknown plot kind "${kind}"`);
        console.error(USAGE);
        return 1;
    }
    writeFileSync(out, svg, "utf-8");
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
  return 0;
}

// Invoked directly (not imported): run and exit.
if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
