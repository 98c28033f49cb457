/** CSV/JSON loading with strict schema checks.
 *
 * A schema mismatch reports the column diff and fails the run; an empty
 * profile is an error, not an empty plot.
 */

import { readFileSync } from "fs";

import type { ProfilePoint, RatePoint, RunSummary, SweepPoint } from "./types.js";

export class SchemaError extends Error {}

function parseCsv(path: string, expected: string[]): number[][] {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const lines = text.trim().split(/\r?\n/);
  if (lines.length === 0 || lines[0].trim() === "") {
    throw new SchemaError(`${path}: empty file`);
  }
  const header = lines[0].split(",").map((s) => s.trim());
  if (header.length !== expected.length || header.some((h, i) => h !== expected[i])) {
    throw new SchemaError(
      `${path}: header mismatch: expected [${expected.join(", ")}], ` +
        `got [${header.join(", ")}]`
    );
  }
  const rows: number[][] = [];
  for (const line of lines.slice(1)) {
    if (line.trim() === "") continue;
    const parts = line.split(",").map(Number);
    if (parts.length !== expected.length || parts.some((v) => !Number.isFinite(v))) {
      throw new SchemaError(`${path}: bad row: ${line}`);
    }
    rows.push(parts);
  }
  if (rows.length === 0) {
    throw new SchemaError(`${path}: no data rows`);
  }
  return rows;
}

export function readProfile(path: string): ProfilePoint[] {
  return parseCsv(path, ["R", "I_R"]).map(([R, I]) => ({ R, I }));
}

export function readRateSeries(path: string): RatePoint[] {
  return parseCsv(path, ["t", "rate"]).map(([t, rate]) => ({ t, rate }));
}

export function readSweep(path: string): SweepPoint[] {
  return parseCsv(path, ["N", "eta_N"]).map(([N, eta]) => ({ N, eta }));
}

export function readSummary(path: string): RunSummary {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const data = JSON.parse(text) as RunSummary;
  if (!data.config || !data.version) {
    throw new SchemaError(`${path}: not a run summary (missing config/version)`);
  }
  return data;
}
