import * as fs from "fs";
import * as path from "path";
import { describe, expect, it } from "vitest";

import { CsvError, parseSweepCsv } from "../src/csv";

const FIXTURE = path.join(__dirname, "fixtures", "reference_sweep.csv");
const HEADER = "snr_db,method,parameter,accuracy,amplitude_error,trials,failures";

describe("parseSweepCsv", () => {
  it("parses the reference sweep", () => {
    const rows = parseSweepCsv(fs.readFileSync(FIXTURE, "utf-8"));
    expect(rows.length).toBeGreaterThan(50);
    const snrs = new Set(rows.map((r) => r.snr_db));
    expect(snrs.has(-40)).toBe(true);
    expect(snrs.has(10)).toBe(true);
    for (const r of rows) {
      expect(r.accuracy).toBeGreaterThanOrEqual(0);
      expect(r.accuracy).toBeLessThanOrEqual(1);
      expect(r.amplitude_error).toBeGreaterThanOrEqual(0);
    }
  });

  it("names the missing column", () => {
    const text = "snr_db,method,parameter,accuracy,trials,failures\n-10,a,n_s,1,5,0\n";
    expect(() => parseSweepCsv(text)).toThrowError(/missing column: amplitude_error/);
  });

  it("rejects an empty body", () => {
    expect(() => parseSweepCsv(HEADER + "\n")).toThrowError(/no rows/);
    expect(() => parseSweepCsv("")).toThrowError(CsvError);
  });

  it("accepts a single data row", () => {
    const rows = parseSweepCsv(HEADER + "\n-10,traversal,n_s,0.9,0.05,200,3\n");
    expect(rows).toHaveLength(1);
    expect(rows[0]).toMatchObject({
      snr_db: -10,
      method: "traversal",
      parameter: "n_s",
      accuracy: 0.9,
      amplitude_error: 0.05,
      trials: 200,
      failures: 3,
    });
  });

  it("rejects non-numeric cells", () => {
    expect(() =>
      parseSweepCsv(HEADER + "\n-10,traversal,n_s,high,0.05,200,3\n")
    ).toThrowError(/non-numeric/);
  });
});
