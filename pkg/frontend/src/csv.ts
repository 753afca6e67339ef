import Papa from "papaparse";

export interface ResultRow {
  values: Record<string, string>;
  usefulness: number;
  novelty: number;
}

export interface ResultTable {
  header: string[];
  rows: ResultRow[];
}

export interface Group {
  label: string;
  usefulness: number[];
  novelty: number[];
}

const METRIC_COLUMNS = ["usefulness", "novelty"];

/** Parse an experiment results CSV, checking the columns we depend on. */
export function parseResults(csvText: string, groupBy: string[]): ResultTable {
  const parsed = Papa.parse<Record<string, string>>(csvText.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new Error(`CSV parse error at row ${e.row}: ${e.message}`);
  }
  const header = parsed.meta.fields ?? [];
  const missing = [...METRIC_COLUMNS, ...groupBy].filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new Error(`CSV is missing required column(s): ${missing.join(", ")}`);
  }
  if (parsed.data.length === 0) {
    throw new Error("CSV contains no data rows");
  }
  const rows: ResultRow[] = parsed.data.map((r, i) => {
    const usefulness = Number(r.usefulness);
    const novelty = Number(r.novelty);
    if (!Number.isFinite(usefulness) || !Number.isFinite(novelty)) {
      throw new Error(`row ${i + 1}: non-numeric usefulness/novelty`);
    }
    return { values: r, usefulness, novelty };
  });
  return { header, rows };
}

/** Short float label: "0.10000000000000001" from 17-digit output becomes "0.1". */
function tidyNumber(s: string): string {
  const n = Number(s);
  return Number.isFinite(n) ? String(n) : s;
}

function groupLabel(row: ResultRow, groupBy: string[]): string {
  const parts: string[] = [];
  for (const key of groupBy) {
    const v = row.values[key] ?? "";
    if (v === "") continue; // plain runs leave tau blank
    parts.push(key === "tau" ? `tau=${tidyNumber(v)}` : v);
  }
  return parts.join(" ") || "(all)";
}

/** Group rows by the given keys, preserving first-appearance order. */
export function groupRows(table: ResultTable, groupBy: string[]): Group[] {
  const order: string[] = [];
  const byLabel = new Map<string, Group>();
  for (const row of table.rows) {
    const label = groupLabel(row, groupBy);
    let g = byLabel.get(label);
    if (!g) {
      g = { label, usefulness: [], novelty: [] };
      byLabel.set(label, g);
      order.push(label);
    }
    g.usefulness.push(row.usefulness);
    g.novelty.push(row.novelty);
  }
  return order.map((l) => byLabel.get(l)!);
}
