/** Ordinary least-squares line fit, used for drift slopes and observed orders. */

export interface LineFit {
  slope: number;
  intercept: number;
  r2: number;
  n: number;
}

export function fitLine(x: number[], y: number[]): LineFit {
  if (x.length !== y.length) {
    throw new Error(`fitLine: ${x.length} x values vs ${y.length} y values`);
  }
  const xs: number[] = [];
  const ys: number[] = [];
  for (let i = 0; i < x.length; i++) {
    if (Number.isFinite(x[i]) && Number.isFinite(y[i])) {
      xs.push(x[i]!);
      ys.push(y[i]!);
    }
  }
  const n = xs.length;
  if (n < 2) throw new Error(`fitLine: needs at least 2 finite points, found ${n}`);

  const xm = xs.reduce((a, b) => a + b, 0) / n;
  const ym = ys.reduce((a, b) => a + b, 0) / n;
  let sxx = 0;
  let sxy = 0;
  let syy = 0;
  for (let i = 0; i < n; i++) {
    const dx = xs[i]! - xm;
    const dy = ys[i]! - ym;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx === 0) throw new Error("fitLine: x values are all equal");

  const slope = sxy / sxx;
  // Residual sum of squares via syy - sxy^2/sxx; guard tiny negatives from roundoff.
  const ssRes = Math.max(0, syy - slope * sxy);
  return {
    slope,
    intercept: ym - slope * xm,
    r2: syy === 0 ? 1 : 1 - ssRes / syy,
    n,
  };
}
