import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import path from "path";

import { describe, expect, it } from "vitest";

import { SchemaError, readProfile, readRateSeries, readSummary } from "../src/io.js";

function tmpFile(name: string, content: string): string {
  const dir = mkdtempSync(path.join(tmpdir(), "lrq-"));
  const p = path.join(dir, name);
  writeFileSync(p, content);
  return p;
}

describe("csv readers", () => {
  it("reads a profile", () => {
    const p = tmpFile("a.csv", "R,I_R\n1,0.5\n2,0.25\n");
    expect(readProfile(p)).toEqual([
      { R: 1, I: 0.5 },
      { R: 2, I: 0.25 },
    ]);
  });

  it("rejects a column mismatch with a diff", () => {
    const p = tmpFile("a.csv", "R,mutual\n1,0.5\n");
    expect(() => readProfile(p)).toThrowError(/expected \[R, I_R\], got \[R, mutual\]/);
  });

  it("rejects an empty profile", () => {
    const p = tmpFile("a.csv", "R,I_R\n");
    expect(() => readProfile(p)).toThrowError(SchemaError);
    expect(() => readProfile(p)).toThrowError(/no data rows/);
  });

  it("rejects non-numeric rows", () => {
    const p = tmpFile("a.csv", "t,rate\n0,zero\n");
    expect(() => readRateSeries(p)).toThrowError(/bad row/);
  });

  it("rejects a missing file", () => {
    expect(() => readProfile("/nonexistent/x.csv")).toThrowError(SchemaError);
  });
});

describe("summary reader", () => {
  it("requires config and version", () => {
    const p = tmpFile("s.json", JSON.stringify({ foo: 1 }));
    expect(() => readSummary(p)).toThrowError(/not a run summary/);
  });

  it("round-trips a minimal summary", () => {
    const p = tmpFile(
      "s.json",
      JSON.stringify({ version: "0.1.0", config: { "model.n": 8 }, cusps: [1.5] })
    );
    const s = readSummary(p);
    expect(s.cusps).toEqual([1.5]);
  });
});
