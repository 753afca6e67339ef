import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { runCli } from "../src/cli.js";

const FIXTURE = fileURLToPath(new URL("./fixtures/fig2_cosine2d.csv", import.meta.url));
const CLI_JS = fileURLToPath(new URL("../dist/cli.js", import.meta.url));

let tmp: string;
beforeEach(() => {
  tmp = fs.mkdtempSync(path.join(os.tmpdir(), "comqel-plots-"));
  vi.spyOn(console, "log").mockImplementation(() => {});
  vi.spyOn(console, "error").mockImplementation(() => {});
});
afterEach(() => {
  fs.rmSync(tmp, { recursive: true, force: true });
  vi.restoreAllMocks();
});

describe("runCli", () => {
  it("renders the fixture to an svg file", () => {
    const out = path.join(tmp, "fig2.svg");
    const code = runCli(["--in", FIXTURE, "--out", out]);
    expect(code).toBe(0);
    const svg = fs.readFileSync(out, "utf8");
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain('data-panel="novelty"');
    // title comes from the .meta.json sitting next to the fixture
    expect(svg).toContain("cosine2d, 30 seeds");
  });

  it("honors --group-by", () => {
    const out = path.join(tmp, "by-method.svg");
    expect(runCli(["--in", FIXTURE, "--out", out, "--group-by", "method"])).toBe(0);
    const svg = fs.readFileSync(out, "utf8");
    expect(svg).toContain("3 groups");
  });

  it("fails without writing a file when the CSV is empty", () => {
    const empty = path.join(tmp, "empty.csv");
    fs.writeFileSync(empty, "seed,method,tau,ansatz,usefulness,novelty\n");
    const out = path.join(tmp, "never.svg");
    expect(runCli(["--in", empty, "--out", out])).toBe(1);
    expect(fs.existsSync(out)).toBe(false);
  });

  it("reports missing columns descriptively", () => {
    const broken = path.join(tmp, "broken.csv");
    fs.writeFileSync(broken, "seed,method,usefulness\n0,qel,0.5\n");
    expect(runCli(["--in", broken, "--out", path.join(tmp, "x.svg")])).toBe(1);
    expect(vi.mocked(console.error).mock.calls.join(" ")).toContain("novelty");
  });

  it("fails on a group key the CSV does not have", () => {
    expect(runCli(["--in", FIXTURE, "--out", path.join(tmp, "x.svg"), "--group-by", "flavor"]))
      .toBe(1);
    expect(vi.mocked(console.error).mock.calls.join(" ")).toContain("flavor");
  });

  it("treats a missing input file as an error", () => {
    expect(runCli(["--in", path.join(tmp, "nope.csv"), "--out", path.join(tmp, "x.svg")]))
      .toBe(1);
  });

  it("rejects unknown flags as a usage error", () => {
    expect(runCli(["--in", FIXTURE, "--out", path.join(tmp, "x.svg"), "--wat"])).toBe(2);
  });
});

describe("built binary", () => {
  it("runs end to end from dist/", () => {
    const out = path.join(tmp, "from-dist.svg");
    const stdout = execFileSync(process.execPath, [CLI_JS, "--in", FIXTURE, "--out", out], {
      encoding: "utf8",
    });
    expect(stdout).toContain("wrote");
    expect(fs.readFileSync(out, "utf8")).toContain("csv sha256");
  });
});
