/**
 * Line-chart rendering for sweep curves: one series per method, x = SNR in dB,
 * y = the chosen metric, legend, grid and labeled axes.
 */
import { Color, Raster } from "./canvas";
import { textWidth } from "./font";

export interface Series {
  label: string;
  points: Array<{ x: number; y: number }>;
}

export interface ChartOptions {
  width?: number;
  height?: number;
  title: string;
  xLabel: string;
  yLabel: string;
  yMax?: number;
}

export interface ChartLayout {
  xDomain: [number, number];
  yDomain: [number, number];
  raster: Raster;
}

const PALETTE: Color[] = [
  [31, 119, 180],
  [255, 127, 14],
  [44, 160, 44],
  [214, 39, 40],
  [148, 103, 189],
  [140, 86, 75],
  [227, 119, 194],
  [127, 127, 127],
];

const AXIS: Color = [40, 40, 40];
const GRID: Color = [220, 220, 220];

/** Tick positions with a 1/2/5 step covering [lo, hi]. */
export function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  const rawStep = (hi - lo) / Math.max(target - 1, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= rawStep) {
      step = m * mag;
      break;
    }
  }
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : Number(v.toPrecision(12)));
  }
  return ticks;
}

function formatTick(v: number): string {
  if (Number.isInteger(v)) return String(v);
  const s = v.toPrecision(3);
  return String(Number(s));
}

export function renderChart(series: Series[], opts: ChartOptions): ChartLayout {
  const width = opts.width ?? 880;
  const height = opts.height ?? 540;
  const margin = { left: 86, right: 24, top: 42, bottom: 58 };
  const raster = new Raster(width, height);

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) => s.points.map((p) => p.y));
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  if (!(xHi > xLo)) {
    xLo -= 1;
    xHi += 1;
  }
  const yLo = 0;
  const yHi = opts.yMax ?? Math.max(1, ...ys) * 1.05;

  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const px = (x: number) => margin.left + ((x - xLo) / (xHi - xLo)) * plotW;
  const py = (y: number) => margin.top + plotH - ((y - yLo) / (yHi - yLo)) * plotH;

  // grid and ticks
  for (const t of niceTicks(xLo, xHi, 8)) {
    const x = px(t);
    raster.line(x, margin.top, x, margin.top + plotH, GRID);
    raster.line(x, margin.top + plotH, x, margin.top + plotH + 4, AXIS);
    raster.textCentered(x, margin.top + plotH + 9, formatTick(t), AXIS);
  }
  for (const t of niceTicks(yLo, yHi, 6)) {
    const y = py(t);
    raster.line(margin.left, y, margin.left + plotW, y, GRID);
    raster.line(margin.left - 4, y, margin.left, y, AXIS);
    raster.textRight(margin.left - 8, y - 7, formatTick(t), AXIS);
  }

  // frame
  raster.line(margin.left, margin.top, margin.left, margin.top + plotH, AXIS);
  raster.line(margin.left, margin.top + plotH, margin.left + plotW, margin.top + plotH, AXIS);

  // series
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = [...s.points].sort((a, b) => a.x - b.x);
    for (let k = 1; k < pts.length; k++) {
      raster.line(px(pts[k - 1].x), py(pts[k - 1].y), px(pts[k].x), py(pts[k].y), color, 2);
    }
    for (const p of pts) {
      raster.disc(Math.round(px(p.x)), Math.round(py(p.y)), 3, color);
    }
  });

  // legend (top-right inside the plot)
  const legendScale = 2;
  const entryH = 16;
  const legendW =
    30 + Math.max(...series.map((s) => textWidth(s.label, legendScale)), 0) + 8;
  const lx = margin.left + plotW - legendW - 6;
  const ly = margin.top + 6;
  raster.fillRect(lx, ly, legendW, series.length * entryH + 8, [252, 252, 252]);
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const yy = ly + 6 + i * entryH;
    raster.line(lx + 4, yy + 5, lx + 22, yy + 5, color, 2);
    raster.text(lx + 28, yy, s.label, AXIS, legendScale);
  });

  // titles
  raster.textCentered(margin.left + plotW / 2, 12, opts.title, AXIS, 2);
  raster.textCentered(margin.left + plotW / 2, height - 22, opts.xLabel, AXIS, 2);
  raster.text(6, 12, opts.yLabel, AXIS, 2);

  return { xDomain: [xLo, xHi], yDomain: [yLo, yHi], raster };
}
