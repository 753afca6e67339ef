#!/usr/bin/env node
import * as fs from "node:fs";
import * as path from "node:path";

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { renderViolins } from "./svg.js";

/** Title from the run metadata the experiment harness writes next to its CSV. */
function titleFor(csvPath: string): string {
  const metaPath = `${csvPath}.meta.json`;
  try {
    const meta = JSON.parse(fs.readFileSync(metaPath, "utf8"));
    const task = meta?.config?.task;
    const seeds = meta?.config?.n_seeds;
    if (task) return seeds ? `${task}, ${seeds} seeds` : String(task);
  } catch {
    // no metadata is fine, fall back to the file name
  }
  return path.basename(csvPath);
}

export function runCli(argv: string[]): number {
  let args;
  try {
    args = yargs(argv)
      .option("in", { type: "string", demandOption: true, describe: "experiment results CSV" })
      .option("out", { type: "string", demandOption: true, describe: "output SVG path" })
      .option("group-by", {
        type: "string",
        default: "method,tau",
        describe: "comma-separated CSV columns that define one violin per panel",
      })
      .strict()
      .exitProcess(false)
      .parseSync();
  } catch (e) {
    console.error(`usage error: ${(e as Error).message}`);
    return 2;
  }

  const groupBy = args.groupBy
    .split(",")
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
  if (groupBy.length === 0) {
    console.error("usage error: --group-by needs at least one column");
    return 2;
  }

  let csvText: string;
  try {
    csvText = fs.readFileSync(args.in, "utf8");
  } catch (e) {
    console.error(`error: cannot read ${args.in}: ${(e as Error).message}`);
    return 1;
  }

  let svg: string;
  try {
    svg = renderViolins(csvText, { groupBy, title: titleFor(args.in) });
  } catch (e) {
    console.error(`error: ${(e as Error).message}`);
    return 1;
  }

  fs.mkdirSync(path.dirname(path.resolve(args.out)), { recursive: true });
  fs.writeFileSync(args.out, svg);
  console.log(`wrote ${args.out}`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${path.resolve(process.argv[1])}`).href;
if (invokedDirectly) {
  process.exit(runCli(hideBin(process.argv)));
}
