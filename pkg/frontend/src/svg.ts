/**
 * Dependency-free SVG line charts with linear and log10 axes.
 *
 * Points that cannot be placed on the requested scale (NaN, or nonpositive
 * values on a log axis) split the polyline into segments instead of being
 * silently clamped.
 */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color?: string;
  width?: number;
  dash?: string;
  markers?: boolean;
}

export interface ChartOptions {
  title: string;
  subtitle?: string;
  xLabel: string;
  yLabel: string;
  xLog?: boolean;
  yLog?: boolean;
  series: Series[];
  /** Reference lines (drawn dashed behind the data, listed in the legend). */
  guides?: Series[];
  width?: number;
  height?: number;
}

export const PALETTE = ["#4361ee", "#e63946", "#2d6a4f", "#f4a261", "#7209b7", "#546a7b"];
const GUIDE_COLOR = "#888";

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function niceTicks(min: number, max: number, count = 5): number[] {
  const range = max - min || Math.abs(max) || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= rough) ?? rough;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 0.01; v += step) {
    // Snap values like 0.30000000000000004 back onto the step grid.
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

/** Powers of ten covering [min, max]; at most one per decade, thinned to ~8. */
function decadeTicks(min: number, max: number): number[] {
  const lo = Math.floor(Math.log10(min));
  const hi = Math.ceil(Math.log10(max));
  const every = Math.max(1, Math.ceil((hi - lo) / 8));
  const ticks: number[] = [];
  for (let e = lo; e <= hi; e += every) ticks.push(Math.pow(10, e));
  return ticks;
}

export function fmtNum(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) {
    return v.toExponential(0).replace("e+", "e");
  }
  // Trim trailing zeros without switching to exponent form.
  return parseFloat(v.toPrecision(6)).toString();
}

interface Scale {
  (v: number): number;
  plottable(v: number): boolean;
  ticks(): number[];
}

function makeScale(
  values: number[],
  log: boolean,
  pixelLo: number,
  pixelHi: number,
): Scale {
  const ok = values.filter((v) => Number.isFinite(v) && (!log ? true : v > 0));
  if (ok.length === 0) throw new Error("nothing to plot on this axis");
  let lo = Math.min(...ok);
  let hi = Math.max(...ok);
  if (log) {
    lo = Math.pow(10, Math.floor(Math.log10(lo)));
    hi = Math.pow(10, Math.ceil(Math.log10(hi)));
    if (lo === hi) hi = lo * 10;
  } else {
    const pad = (hi - lo || Math.abs(hi) || 1) * 0.05;
    lo -= pad;
    hi += pad;
  }
  const tr = (v: number) => (log ? Math.log10(v) : v);
  const span = tr(hi) - tr(lo);
  const scale = ((v: number) =>
    pixelLo + ((tr(v) - tr(lo)) / span) * (pixelHi - pixelLo)) as Scale;
  scale.plottable = (v: number) => Number.isFinite(v) && (!log || v > 0);
  scale.ticks = () => (log ? decadeTicks(lo, hi) : niceTicks(lo, hi));
  return scale;
}

/** Polyline point strings, split wherever a point cannot be placed. */
function segments(s: Series, xOf: Scale, yOf: Scale): string[] {
  const out: string[] = [];
  let current: string[] = [];
  for (let i = 0; i < s.x.length; i++) {
    const x = s.x[i]!;
    const y = s.y[i]!;
    if (xOf.plottable(x) && yOf.plottable(y)) {
      current.push(`${xOf(x).toFixed(1)},${yOf(y).toFixed(1)}`);
    } else if (current.length > 0) {
      out.push(current.join(" "));
      current = [];
    }
  }
  if (current.length > 0) out.push(current.join(" "));
  return out;
}

// ---------------------------------------------------------------------------
// Chart builder
// ---------------------------------------------------------------------------

export function renderChart(opts: ChartOptions): string {
  const W = opts.width ?? 760;
  const H = opts.height ?? 420;
  const ml = 74;
  const mr = 18;
  const mt = opts.subtitle ? 46 : 36;
  const mb = 52;

  const guides = opts.guides ?? [];
  const everything = [...opts.series, ...guides];
  if (everything.length === 0) throw new Error("renderChart: no series");

  const xOf = makeScale(everything.flatMap((s) => s.x), !!opts.xLog, ml, W - mr);
  const yOf = makeScale(everything.flatMap((s) => s.y), !!opts.yLog, H - mb, mt);

  let svg = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  svg += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;
  svg += `<text x="${ml}" y="18" font-size="13" font-weight="600" fill="#222">${esc(opts.title)}</text>\n`;
  if (opts.subtitle) {
    svg += `<text x="${ml}" y="32" font-size="10" fill="#888">${esc(opts.subtitle)}</text>\n`;
  }

  // Grid and tick labels
  const xTicks = xOf.ticks();
  const yTicks = yOf.ticks();
  for (const v of yTicks) {
    const y = yOf(v).toFixed(1);
    svg += `<line x1="${ml}" y1="${y}" x2="${W - mr}" y2="${y}" stroke="#eee" stroke-width="0.6"/>\n`;
    svg += `<text x="${ml - 6}" y="${(yOf(v) + 3.5).toFixed(1)}" text-anchor="end" font-size="10" fill="#555">${esc(fmtNum(v))}</text>\n`;
  }
  for (const v of xTicks) {
    const x = xOf(v).toFixed(1);
    svg += `<line x1="${x}" y1="${mt}" x2="${x}" y2="${H - mb}" stroke="#f3f3f3" stroke-width="0.6"/>\n`;
    svg += `<line x1="${x}" y1="${H - mb}" x2="${x}" y2="${H - mb + 4}" stroke="#333" stroke-width="0.6"/>\n`;
    svg += `<text x="${x}" y="${H - mb + 16}" text-anchor="middle" font-size="10" fill="#555">${esc(fmtNum(v))}</text>\n`;
  }

  // Guides behind the data
  for (const g of guides) {
    for (const pts of segments(g, xOf, yOf)) {
      svg += `<polyline fill="none" stroke="${g.color ?? GUIDE_COLOR}" stroke-width="${g.width ?? 1}" stroke-dasharray="${g.dash ?? "6,4"}" points="${pts}"/>\n`;
    }
  }

  // Data series
  opts.series.forEach((s, i) => {
    const color = s.color ?? PALETTE[i % PALETTE.length]!;
    for (const pts of segments(s, xOf, yOf)) {
      svg += `<polyline fill="none" stroke="${color}" stroke-width="${s.width ?? 1.3}" ${s.dash ? `stroke-dasharray="${s.dash}" ` : ""}points="${pts}"/>\n`;
    }
    if (s.markers) {
      for (let k = 0; k < s.x.length; k++) {
        if (xOf.plottable(s.x[k]!) && yOf.plottable(s.y[k]!)) {
          svg += `<circle cx="${xOf(s.x[k]!).toFixed(1)}" cy="${yOf(s.y[k]!).toFixed(1)}" r="3" fill="${color}"/>\n`;
        }
      }
    }
  });

  // Axes frame
  svg += `<line x1="${ml}" y1="${mt}" x2="${ml}" y2="${H - mb}" stroke="#333" stroke-width="0.8"/>\n`;
  svg += `<line x1="${ml}" y1="${H - mb}" x2="${W - mr}" y2="${H - mb}" stroke="#333" stroke-width="0.8"/>\n`;
  svg += `<text x="${ml + (W - ml - mr) / 2}" y="${H - 8}" text-anchor="middle" font-size="11" fill="#444">${esc(opts.xLabel)}</text>\n`;
  const yMid = mt + (H - mt - mb) / 2;
  svg += `<text x="16" y="${yMid}" text-anchor="middle" font-size="11" fill="#444" transform="rotate(-90,16,${yMid})">${esc(opts.yLabel)}</text>\n`;

  // Legend, top right
  const entries = [
    ...opts.series.map((s, i) => ({
      label: s.label,
      color: s.color ?? PALETTE[i % PALETTE.length]!,
      dash: s.dash,
    })),
    ...guides.map((g) => ({ label: g.label, color: g.color ?? GUIDE_COLOR, dash: g.dash ?? "6,4" })),
  ].filter((e) => e.label.length > 0);
  if (entries.length > 0) {
    const boxW = Math.max(...entries.map((e) => e.label.length)) * 6 + 34;
    const x0 = W - mr - boxW - 6;
    const y0 = mt + 8;
    svg += `<rect x="${x0}" y="${y0 - 10}" width="${boxW}" height="${entries.length * 15 + 6}" rx="3" fill="#fff" fill-opacity="0.88" stroke="#ddd" stroke-width="0.5"/>\n`;
    entries.forEach((e, i) => {
      const yy = y0 + i * 15;
      svg += `<line x1="${x0 + 6}" y1="${yy}" x2="${x0 + 24}" y2="${yy}" stroke="${e.color}" stroke-width="1.5"${e.dash ? ` stroke-dasharray="${e.dash}"` : ""}/>\n`;
      svg += `<text x="${x0 + 29}" y="${yy + 3.5}" font-size="10" fill="#444">${esc(e.label)}</text>\n`;
    });
  }

  svg += `</svg>\n`;
  return svg;
}
