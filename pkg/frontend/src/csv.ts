/**
 * Parser for the sweep CSV wire format:
 *   snr_db,method,parameter,accuracy,amplitude_error,trials,failures
 * Column order is not assumed; required columns are located by name and a
 * missing one is reported by name.
 */

export interface SweepRow {
  snr_db: number;
  method: string;
  parameter: string;
  accuracy: number;
  amplitude_error: number;
  trials: number;
  failures: number;
}

export class CsvError extends Error {}

const REQUIRED = [
  "snr_db",
  "method",
  "parameter",
  "accuracy",
  "amplitude_error",
  "trials",
  "failures",
] as const;

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new CsvError("no rows (empty file)");
  }
  const header = lines[0].split(",").map((h) => h.trim());
  const index = new Map<string, number>();
  header.forEach((name, i) => index.set(name, i));
  for (const col of REQUIRED) {
    if (!index.has(col)) {
      throw new CsvError(`missing column: ${col}`);
    }
  }
  const body = lines.slice(1);
  if (body.length === 0) {
    throw new CsvError("no rows");
  }
  return body.map((line, n) => {
    const cells = line.split(",");
    if (cells.length < header.length) {
      throw new CsvError(`row ${n + 2}: expected ${header.length} cells, got ${cells.length}`);
    }
    const num = (col: string): number => {
      const v = Number(cells[index.get(col)!]);
      if (!Number.isFinite(v)) {
        throw new CsvError(`row ${n + 2}: non-numeric value in column ${col}`);
      }
      return v;
    };
    return {
      snr_db: num("snr_db"),
      method: cells[index.get("method")!].trim(),
      parameter: cells[index.get("parameter")!].trim(),
      accuracy: num("accuracy"),
      amplitude_error: num("amplitude_error"),
      trials: num("trials"),
      failures: num("failures"),
    };
  });
}
