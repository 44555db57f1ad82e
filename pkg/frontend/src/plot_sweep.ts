#!/usr/bin/env node
/**
 * plot_sweep <csv> --metric accuracy|ae --parameter n_s|n_u|n_cn|q[,more] --out <png>
 *
 * Renders one curve per method (per parameter when several are selected) from
 * a sweep CSV, x = SNR in dB, y = the chosen metric.  Reads nothing but the
 * CSV contract, never modifies the input, exits non-zero on malformed input.
 */
import * as fs from "fs";

import { renderChart, Series } from "./chart";
import { CsvError, parseSweepCsv, SweepRow } from "./csv";
import { encodePng } from "./png";

export interface PlotArgs {
  csvPath: string;
  metric: "accuracy" | "ae";
  parameters: string[];
  outPath: string;
  width?: number;
  height?: number;
}

export class UsageError extends Error {}

const KNOWN_PARAMETERS = new Set(["n_s", "n_u", "n_cn", "q"]);

export function parseArgs(argv: string[]): PlotArgs {
  let csvPath: string | undefined;
  let metric: string | undefined;
  let parameter: string | undefined;
  let outPath: string | undefined;
  let width: number | undefined;
  let height: number | undefined;

  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    const next = () => {
      if (i + 1 >= argv.length) throw new UsageError(`${a} needs a value`);
      return argv[++i];
    };
    if (a === "--metric") metric = next();
    else if (a === "--parameter") parameter = next();
    else if (a === "--out") outPath = next();
    else if (a === "--width") width = Number(next());
    else if (a === "--height") height = Number(next());
    else if (a.startsWith("--")) throw new UsageError(`unknown option ${a}`);
    else if (csvPath === undefined) csvPath = a;
    else throw new UsageError(`unexpected argument ${a}`);
  }
  if (!csvPath) throw new UsageError("usage: plot_sweep <csv> --metric accuracy|ae --parameter n_s|n_u|n_cn|q --out <png>");
  if (metric !== "accuracy" && metric !== "ae") {
    throw new UsageError("--metric must be accuracy or ae");
  }
  if (!parameter) throw new UsageError("--parameter is required");
  if (!outPath) throw new UsageError("--out is required");
  const parameters = parameter.split(",").map((p) => p.trim());
  for (const p of parameters) {
    if (!KNOWN_PARAMETERS.has(p)) {
      throw new UsageError(`unknown parameter ${p} (expected n_s, n_u, n_cn or q)`);
    }
  }
  return { csvPath, metric, parameters, outPath, width, height };
}

function buildSeries(rows: SweepRow[], args: PlotArgs): Series[] {
  const selected = rows.filter((r) => args.parameters.includes(r.parameter));
  if (selected.length === 0) {
    throw new CsvError(
      `no rows for parameter(s) ${args.parameters.join(", ")}`
    );
  }
  const multi = args.parameters.length > 1;
  const byKey = new Map<string, Series>();
  for (const r of selected) {
    const key = multi ? `${r.method} ${r.parameter}` : r.method;
    if (!byKey.has(key)) {
      byKey.set(key, { label: key, points: [] });
    }
    byKey.get(key)!.points.push({
      x: r.snr_db,
      y: args.metric === "accuracy" ? r.accuracy : r.amplitude_error,
    });
  }
  return [...byKey.values()].sort((a, b) => a.label.localeCompare(b.label));
}

export interface PlotResult {
  xDomain: [number, number];
  yDomain: [number, number];
  seriesLabels: string[];
  pngBytes: number;
}

export function runPlot(args: PlotArgs): PlotResult {
  const text = fs.readFileSync(args.csvPath, "utf-8");
  const rows = parseSweepCsv(text);
  const series = buildSeries(rows, args);
  const metricLabel = args.metric === "accuracy" ? "accuracy" : "amplitude error";
  const layout = renderChart(series, {
    width: args.width,
    height: args.height,
    title: `${args.parameters.join(", ")} ${metricLabel} vs SNR`,
    xLabel: "SNR (dB)",
    yLabel: args.metric === "accuracy" ? "accuracy" : "ae = |est-true|/true",
    yMax: args.metric === "accuracy" ? 1.05 : undefined,
  });
  const png = encodePng(layout.raster.width, layout.raster.height, layout.raster.pixels);
  fs.writeFileSync(args.outPath, png);
  return {
    xDomain: layout.xDomain,
    yDomain: layout.yDomain,
    seriesLabels: series.map((s) => s.label),
    pngBytes: png.length,
  };
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    const result = runPlot(args);
    console.log(
      `wrote ${args.outPath} (${result.pngBytes} bytes, ` +
        `${result.seriesLabels.length} series, snr ${result.xDomain[0]}..${result.xDomain[1]} dB)`
    );
    return 0;
  } catch (err) {
    if (err instanceof UsageError || err instanceof CsvError) {
      console.error(`error: ${err.message}`);
      return 2;
    }
    if (err instanceof Error && "code" in err && (err as NodeJS.ErrnoException).code === "ENOENT") {
      console.error(`error: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
