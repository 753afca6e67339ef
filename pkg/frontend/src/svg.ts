import { createHash } from "node:crypto";

import { Group, groupRows, parseResults } from "./csv.js";
import { kdeCurve, quantile, silvermanBandwidth } from "./kde.js";

export interface RenderOptions {
  groupBy: string[];
  title?: string;
}

const LAYOUT = {
  marginLeft: 58,
  marginRight: 16,
  marginTop: 36,
  panelGap: 30,
  marginBottom: 64,
  slotWidth: 96,
  panelHeight: 200,
  maxHalfWidth: 36,
};

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function tickLabel(x: number): string {
  return String(Number(x.toFixed(10)));
}

function niceTicks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const raw = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = 10 * mag;
  for (const m of [1, 2, 5]) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push(Number(t.toFixed(12)));
  }
  return ticks;
}

interface Shape {
  kind: "violin" | "point";
  curve?: { x: number; half: number }[]; // metric value, half-width in px
  median?: number;
  point?: number;
}

/** One violin (or point, for degenerate samples) per group. */
function groupShape(values: number[]): Shape {
  if (values.length === 1 || silvermanBandwidth(values) <= 0) {
    return { kind: "point", point: values[0] };
  }
  const curve = kdeCurve(values);
  const peak = Math.max(...curve.map((p) => p.density));
  const sorted = [...values].sort((a, b) => a - b);
  return {
    kind: "violin",
    curve: curve.map((p) => ({ x: p.x, half: (p.density / peak) * LAYOUT.maxHalfWidth })),
    median: quantile(sorted, 0.5),
  };
}

function panelSvg(
  name: string,
  groups: Group[],
  metric: "usefulness" | "novelty",
  top: number,
  plotWidth: number,
): string {
  const shapes = groups.map((g) => groupShape(g[metric]));
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of shapes) {
    if (s.kind === "point") {
      lo = Math.min(lo, s.point!);
      hi = Math.max(hi, s.point!);
    } else {
      for (const p of s.curve!) {
        lo = Math.min(lo, p.x);
        hi = Math.max(hi, p.x);
      }
    }
  }
  if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const y = (v: number) =>
    top + LAYOUT.panelHeight - ((v - lo) / (hi - lo)) * LAYOUT.panelHeight;
  const px = (v: number) => v.toFixed(2);

  const parts: string[] = [`<g data-panel="${name}">`];
  parts.push(
    `<line x1="${LAYOUT.marginLeft}" y1="${px(top)}" x2="${LAYOUT.marginLeft}" ` +
      `y2="${px(top + LAYOUT.panelHeight)}" stroke="#444" stroke-width="1"/>`,
  );
  for (const t of niceTicks(lo, hi)) {
    const ty = y(t);
    parts.push(
      `<line x1="${LAYOUT.marginLeft - 4}" y1="${px(ty)}" x2="${LAYOUT.marginLeft}" ` +
        `y2="${px(ty)}" stroke="#444" stroke-width="1"/>`,
      `<text x="${LAYOUT.marginLeft - 7}" y="${px(ty + 3.5)}" text-anchor="end" ` +
        `font-size="10" fill="#444">${tickLabel(t)}</text>`,
      `<line x1="${LAYOUT.marginLeft}" y1="${px(ty)}" x2="${LAYOUT.marginLeft + plotWidth}" ` +
        `y2="${px(ty)}" stroke="#ddd" stroke-width="0.5"/>`,
    );
  }
  // rotate(-90) maps text at (-cy, 14) to screen position (14, cy)
  const cy = top + LAYOUT.panelHeight / 2;
  parts.push(
    `<text x="${px(-cy)}" y="14" font-size="12" fill="#222" text-anchor="middle" ` +
      `transform="rotate(-90)">${esc(name)}</text>`,
  );

  shapes.forEach((shape, i) => {
    const cx = LAYOUT.marginLeft + LAYOUT.slotWidth * (i + 0.5);
    if (shape.kind === "point") {
      parts.push(
        `<circle class="single-point" cx="${px(cx)}" cy="${px(y(shape.point!))}" r="3.5" ` +
          `fill="#3b6ea5"/>`,
      );
      return;
    }
    const right = shape.curve!.map((p) => `${px(cx + p.half)},${px(y(p.x))}`);
    const left = [...shape.curve!].reverse().map((p) => `${px(cx - p.half)},${px(y(p.x))}`);
    parts.push(
      `<polygon class="violin" points="${right.join(" ")} ${left.join(" ")}" ` +
        `fill="#9ec2e6" fill-opacity="0.75" stroke="#3b6ea5" stroke-width="1"/>`,
      `<line class="median" x1="${px(cx - LAYOUT.maxHalfWidth * 0.5)}" ` +
        `y1="${px(y(shape.median!))}" x2="${px(cx + LAYOUT.maxHalfWidth * 0.5)}" ` +
        `y2="${px(y(shape.median!))}" stroke="#1d3c5e" stroke-width="1.5"/>`,
    );
  });
  parts.push("</g>");
  return parts.join("\n");
}

/**
 * Render the full two-panel figure (usefulness above novelty) to SVG text.
 * The caption embeds the sha256 of the CSV so figures trace back to runs.
 */
export function renderViolins(csvText: string, options: RenderOptions): string {
  const table = parseResults(csvText, options.groupBy);
  const groups = groupRows(table, options.groupBy);
  const plotWidth = LAYOUT.slotWidth * groups.length;
  const width = LAYOUT.marginLeft + plotWidth + LAYOUT.marginRight;
  const height =
    LAYOUT.marginTop + 2 * LAYOUT.panelHeight + LAYOUT.panelGap + LAYOUT.marginBottom;
  const sha = createHash("sha256").update(csvText).digest("hex");

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
  ];
  if (options.title) {
    parts.push(
      `<text x="${width / 2}" y="22" text-anchor="middle" font-size="14" fill="#111">` +
        `${esc(options.title)}</text>`,
    );
  }
  parts.push(panelSvg("usefulness", groups, "usefulness", LAYOUT.marginTop, plotWidth));
  const bottomTop = LAYOUT.marginTop + LAYOUT.panelHeight + LAYOUT.panelGap;
  parts.push(panelSvg("novelty", groups, "novelty", bottomTop, plotWidth));

  const labelY = bottomTop + LAYOUT.panelHeight + 18;
  groups.forEach((g, i) => {
    const cx = LAYOUT.marginLeft + LAYOUT.slotWidth * (i + 0.5);
    parts.push(
      `<text class="group-label" x="${cx.toFixed(2)}" y="${labelY}" text-anchor="middle" ` +
        `font-size="11" fill="#222">${esc(g.label)}</text>`,
    );
  });
  parts.push(
    `<text class="caption" x="${LAYOUT.marginLeft}" y="${height - 12}" font-size="9" ` +
      `fill="#666">${table.rows.length} runs, ${groups.length} groups, ` +
      `csv sha256 ${sha}</text>`,
    "</svg>",
  );
  return parts.join("\n");
}
