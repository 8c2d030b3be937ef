/**
 * Readers for the solver CLI's CSV outputs.
 *
 * Every file starts with '#'-prefixed header lines (kind tag, run
 * parameters, config echo), then one column-name row, then numeric
 * rows.  Field snapshots store one row per node with the x index
 * varying slowest.
 */
import { readFileSync } from "node:fs";

export interface CsvTable {
  /** Header lines with the leading '#' and padding stripped. */
  header: string[];
  columns: string[];
  /** Row-major numeric data, rows[r][c]. */
  rows: number[][];
}

export interface FieldGrid {
  header: string[];
  x: number[];
  y: number[];
  /** Node values indexed [i][j] following the x and y axes. */
  omega: number[][];
  psi: number[][];
  u1: number[][];
  u2: number[][];
}

export interface Profiles {
  header: string[];
  y: number[];
  u: number[];
  omega: number[];
}

export function readCsv(path: string): CsvTable {
  const text = readFileSync(path, "utf-8");
  const lines = text.split("\n");
  const header: string[] = [];
  let k = 0;
  while (k < lines.length && lines[k].startsWith("#")) {
    header.push(lines[k].slice(1).trim());
    k++;
  }
  if (k >= lines.length || lines[k].trim() === "") {
    throw new Error(`${path}: no column row after header`);
  }
  const columns = lines[k].trim().split(",");
  const rows: number[][] = [];
  for (k++; k < lines.length; k++) {
    const line = lines[k].trim();
    if (line === "") continue;
    const row = line.split(",").map(Number);
    if (row.length !== columns.length || row.some((v) => Number.isNaN(v))) {
      throw new Error(`${path}: malformed data row ${k + 1}: ${line}`);
    }
    rows.push(row);
  }
  return { header, columns, rows };
}

function requireColumns(path: string, got: string[], want: string[]): void {
  const missing = want.filter((c) => !got.includes(c));
  if (missing.length > 0) {
    throw new Error(
      `${path}: columns [${got.join(",")}] missing [${missing.join(",")}]`,
    );
  }
}

/** Ascending distinct values of a coordinate column. */
function axisValues(col: number[]): number[] {
  return Array.from(new Set(col)).sort((a, b) => a - b);
}

export function readFieldCsv(path: string): FieldGrid {
  const t = readCsv(path);
  const want = ["x", "y", "omega", "psi", "u1", "u2"];
  requireColumns(path, t.columns, want);
  const idx = want.map((c) => t.columns.indexOf(c));
  const x = axisValues(t.rows.map((r) => r[idx[0]]));
  const y = axisValues(t.rows.map((r) => r[idx[1]]));
  const nx = x.length;
  const ny = y.length;
  if (nx * ny !== t.rows.length) {
    throw new Error(
      `${path}: ${t.rows.length} rows, expected nx*ny = ${nx * ny}`,
    );
  }
  const shape = (ci: number): number[][] => {
    const out: number[][] = [];
    for (let i = 0; i < nx; i++) {
      const row: number[] = [];
      for (let j = 0; j < ny; j++) row.push(t.rows[i * ny + j][ci]);
      out.push(row);
    }
    return out;
  };
  return {
    header: t.header,
    x,
    y,
    omega: shape(idx[2]),
    psi: shape(idx[3]),
    u1: shape(idx[4]),
    u2: shape(idx[5]),
  };
}

export function readProfilesCsv(path: string): Profiles {
  const t = readCsv(path);
  requireColumns(path, t.columns, ["y", "u", "omega"]);
  const [iy, iu, io] = ["y", "u", "omega"].map((c) => t.columns.indexOf(c));
  return {
    header: t.header,
    y: t.rows.map((r) => r[iy]),
    u: t.rows.map((r) => r[iu]),
    omega: t.rows.map((r) => r[io]),
  };
}

export interface ReferencePoints {
  header: string[];
  coordinate: number[];
  u?: number[];
  omega?: number[];
}

/**
 * Reference marker file: a `coordinate` column plus `u` and/or `omega`
 * columns; panels without a matching column get no markers.
 */
export function readReferenceCsv(path: string): ReferencePoints {
  const t = readCsv(path);
  requireColumns(path, t.columns, ["coordinate"]);
  if (!t.columns.includes("u") && !t.columns.includes("omega")) {
    throw new Error(`${path}: needs a u or omega column beside coordinate`);
  }
  const ic = t.columns.indexOf("coordinate");
  const pick = (name: string): number[] | undefined => {
    const i = t.columns.indexOf(name);
    return i < 0 ? undefined : t.rows.map((r) => r[i]);
  };
  return {
    header: t.header,
    coordinate: t.rows.map((r) => r[ic]),
    u: pick("u"),
    omega: pick("omega"),
  };
}
