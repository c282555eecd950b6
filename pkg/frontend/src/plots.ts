/**
 * Figure builders over cspoisson CSV output.
 *
 * Each builder reads one or more CSV files, writes one SVG, and returns
 * per-series metadata (resolved column, least-squares slope) so callers can
 * report or assert on what was drawn.
 */

import { readFileSync, writeFileSync } from "node:fs";
import path from "node:path";

import {
  column,
  parseConvergenceCsv,
  parseRunCsv,
  resolveErrorColumn,
  stateColumns,
  type RunTable,
} from "./csv.js";
import { fitLine } from "./fit.js";
import { renderChart, type Series } from "./svg.js";

export interface SeriesInfo {
  file: string;
  label: string;
  /** Resolved CSV column for error plots; fitted order for convergence. */
  column?: string;
  /** Signed least-squares slope of the plotted quantity. */
  slope?: number;
  points: number;
}

export interface PlotInfo {
  out: string;
  series: SeriesInfo[];
}

export interface PlotOptions {
  out: string;
  labels?: string[];
}

export interface DriftOptions extends PlotOptions {
  /** "energy", "casimir", or an explicit column name. */
  column?: string;
  /** Signed values on a linear y axis instead of |error| on a log axis. */
  linearY?: boolean;
}

// ---------------------------------------------------------------------------

function seriesLabel(file: string, labels: string[] | undefined, i: number): string {
  return labels?.[i] ?? path.basename(file, ".csv");
}

function loadRun(file: string): RunTable {
  return parseRunCsv(file, readFileSync(file, "utf-8"));
}

function writeSvg(out: string, svg: string): void {
  if (!out.endsWith(".svg")) {
    throw new Error(`output must be an .svg path, got '${out}'`);
  }
  writeFileSync(out, svg);
}

// ---------------------------------------------------------------------------
// drift: invariant error against time
// ---------------------------------------------------------------------------

export function plotDrift(files: string[], opts: DriftOptions): PlotInfo {
  const selector = opts.column ?? "energy";
  const info: SeriesInfo[] = [];
  const series: Series[] = [];

  files.forEach((file, i) => {
    const table = loadRun(file);
    const col = resolveErrorColumn(table, selector);
    const t = column(table, "t");
    const v = column(table, col);
    // Slope is fitted on the signed error so drift direction survives.
    const slope = fitLine(t, v).slope;
    info.push({ file, label: seriesLabel(file, opts.labels, i), column: col, slope, points: t.length });
    series.push({
      label: info[i]!.label,
      x: t,
      y: opts.linearY ? v : v.map(Math.abs),
    });
  });

  const name = selector === "energy" ? "energy" : "casimir";
  const svg = renderChart({
    title: `${name[0]!.toUpperCase()}${name.slice(1)} error over time`,
    xLabel: "t",
    yLabel: opts.linearY ? `${name} error` : `|${name} error|`,
    yLog: !opts.linearY,
    series,
  });
  writeSvg(opts.out, svg);
  return { out: opts.out, series: info };
}

// ---------------------------------------------------------------------------
// trajectory3d: orthographic projection of a 3-d state path
// ---------------------------------------------------------------------------

// Fixed viewing angles; the paper-style figures only need one recognizable view.
const AZIMUTH = (35 * Math.PI) / 180;
const ELEVATION = (25 * Math.PI) / 180;

export function plotTrajectory3d(files: string[], opts: PlotOptions): PlotInfo {
  const info: SeriesInfo[] = [];
  const series: Series[] = [];

  files.forEach((file, i) => {
    const table = loadRun(file);
    const states = stateColumns(table);
    if (states.length < 3) {
      throw new Error(`${file}: trajectory3d needs 3 state columns, found ${states.length}`);
    }
    const [y1, y2, y3] = [column(table, "y1"), column(table, "y2"), column(table, "y3")];
    const px: number[] = [];
    const py: number[] = [];
    for (let k = 0; k < y1.length; k++) {
      px.push(-Math.sin(AZIMUTH) * y1[k]! + Math.cos(AZIMUTH) * y2[k]!);
      py.push(
        -Math.cos(AZIMUTH) * Math.sin(ELEVATION) * y1[k]! -
          Math.sin(AZIMUTH) * Math.sin(ELEVATION) * y2[k]! +
          Math.cos(ELEVATION) * y3[k]!,
      );
    }
    info.push({ file, label: seriesLabel(file, opts.labels, i), points: y1.length });
    series.push({ label: info[i]!.label, x: px, y: py, width: 1 });
  });

  const svg = renderChart({
    title: "State trajectory, orthographic projection",
    subtitle: "view azimuth 35°, elevation 25°",
    xLabel: "projected x",
    yLabel: "projected y",
    series,
  });
  writeSvg(opts.out, svg);
  return { out: opts.out, series: info };
}

// ---------------------------------------------------------------------------
// global-error: growth of the reference-solution error
// ---------------------------------------------------------------------------

export function plotGlobalError(files: string[], opts: PlotOptions): PlotInfo {
  const info: SeriesInfo[] = [];
  const series: Series[] = [];

  files.forEach((file, i) => {
    const table = loadRun(file);
    const t = column(table, "t");
    const v = column(table, "global_err");
    if (!v.some(Number.isFinite)) {
      throw new Error(`${file}: no global error values (run had no reference solution)`);
    }
    const slope = fitLine(t, v).slope;
    info.push({ file, label: seriesLabel(file, opts.labels, i), column: "global_err", slope, points: t.length });
    series.push({ label: info[i]!.label, x: t, y: v });
  });

  const svg = renderChart({
    title: "Global error growth",
    xLabel: "t",
    yLabel: "max-norm error vs reference",
    series,
  });
  writeSvg(opts.out, svg);
  return { out: opts.out, series: info };
}

// ---------------------------------------------------------------------------
// convergence: log-log error against step size, slope 2 and 4 guides
// ---------------------------------------------------------------------------

export function plotConvergence(files: string[], opts: PlotOptions): PlotInfo {
  const info: SeriesInfo[] = [];
  const series: Series[] = [];

  files.forEach((file, i) => {
    const table = parseConvergenceCsv(file, readFileSync(file, "utf-8"));
    const order = fitLine(table.h.map(Math.log10), table.globalErr.map(Math.log10));
    info.push({
      file,
      label: seriesLabel(file, opts.labels, i),
      column: `order ${order.slope.toFixed(2)}`,
      slope: order.slope,
      points: table.h.length,
    });
    series.push({
      label: `${info[i]!.label} (order ${order.slope.toFixed(2)})`,
      x: table.h,
      y: table.globalErr,
      markers: true,
    });
  });

  // Reference slopes anchored at the largest-h point of the first table.
  const anchor = series[0]!;
  const hMax = Math.max(...anchor.x);
  const hMin = Math.min(...series.flatMap((s) => s.x));
  const errAt = anchor.y[anchor.x.indexOf(hMax)]!;
  const guides: Series[] = [2, 4].map((p) => ({
    label: `slope ${p}`,
    x: [hMin, hMax],
    y: [errAt * Math.pow(hMin / hMax, p), errAt],
    dash: p === 2 ? "8,4" : "3,3",
  }));

  const svg = renderChart({
    title: "Convergence against step size",
    xLabel: "h",
    yLabel: "global error at t_end",
    xLog: true,
    yLog: true,
    series,
    guides,
  });
  writeSvg(opts.out, svg);
  return { out: opts.out, series: info };
}
