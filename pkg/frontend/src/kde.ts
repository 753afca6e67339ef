/** Gaussian kernel density estimation for the violin outlines. */

export function quantile(sorted: number[], q: number): number {
  if (sorted.length === 0) throw new Error("quantile of empty sample");
  const pos = q * (sorted.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo);
}

/** Silverman's rule of thumb; 0 when the sample has no spread. */
export function silvermanBandwidth(values: number[]): number {
  const n = values.length;
  if (n < 2) return 0;
  const mean = values.reduce((a, b) => a + b, 0) / n;
  const sd = Math.sqrt(values.reduce((a, b) => a + (b - mean) ** 2, 0) / (n - 1));
  const sorted = [...values].sort((a, b) => a - b);
  const iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  const spread = iqr > 0 ? Math.min(sd, iqr / 1.34) : sd;
  return 0.9 * spread * Math.pow(n, -1 / 5);
}

export interface DensityPoint {
  x: number;
  density: number;
}

/**
 * Evaluate the KDE on an even grid covering the sample plus three
 * bandwidths of padding on each side.
 */
export function kdeCurve(values: number[], gridSize = 64): DensityPoint[] {
  const h = silvermanBandwidth(values);
  if (h <= 0) throw new Error("sample has no spread, no density to draw");
  const lo = Math.min(...values) - 3 * h;
  const hi = Math.max(...values) + 3 * h;
  const norm = 1 / (values.length * h * Math.sqrt(2 * Math.PI));
  const curve: DensityPoint[] = [];
  for (let i = 0; i < gridSize; i++) {
    const x = lo + ((hi - lo) * i) / (gridSize - 1);
    let density = 0;
    for (const v of values) {
      const z = (x - v) / h;
      density += Math.exp(-0.5 * z * z);
    }
    curve.push({ x, density: density * norm });
  }
  return curve;
}
