import { createHash } from "node:crypto";
import * as fs from "node:fs";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { renderViolins } from "../src/svg.js";

const FIXTURE = fileURLToPath(new URL("./fixtures/fig2_cosine2d.csv", import.meta.url));
const fixtureText = fs.readFileSync(FIXTURE, "utf8");

function panelBody(svg: string, name: string): string {
  const start = svg.indexOf(`<g data-panel="${name}">`);
  expect(start).toBeGreaterThanOrEqual(0);
  return svg.slice(start, svg.indexOf("</g>", start));
}

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

describe("renderViolins", () => {
  const svg = renderViolins(fixtureText, { groupBy: ["method", "tau"] });

  it("draws one violin per group on each of the two panels", () => {
    expect(count(panelBody(svg, "usefulness"), 'class="violin"')).toBe(7);
    expect(count(panelBody(svg, "novelty"), 'class="violin"')).toBe(7);
    expect(count(svg, 'class="median"')).toBe(14);
    expect(count(svg, 'class="group-label"')).toBe(7);
  });

  it("puts the usefulness panel above the novelty panel", () => {
    expect(svg.indexOf('data-panel="usefulness"')).toBeLessThan(
      svg.indexOf('data-panel="novelty"'),
    );
  });

  it("embeds the csv sha256 in the caption", () => {
    const sha = createHash("sha256").update(fixtureText).digest("hex");
    expect(svg).toContain(`csv sha256 ${sha}`);
    expect(svg).toContain("210 runs, 7 groups");
  });

  it("is deterministic", () => {
    const again = renderViolins(fixtureText, { groupBy: ["method", "tau"] });
    expect(again).toBe(svg);
  });

  it("does not modify the input file", () => {
    expect(fs.readFileSync(FIXTURE, "utf8")).toBe(fixtureText);
  });

  it("renders a single-row group as a point marker", () => {
    const csv = [
      "seed,method,tau,ansatz,usefulness,novelty",
      "0,qel,,HEA,0.9,0.01",
      "1,qel,,HEA,0.7,0.02",
      "2,qel,,HEA,0.5,0.04",
      "0,com_qel,0.1,HEA,0.8,0.03",
    ].join("\n");
    const out = renderViolins(csv, { groupBy: ["method", "tau"] });
    expect(count(panelBody(out, "usefulness"), 'class="violin"')).toBe(1);
    expect(count(panelBody(out, "usefulness"), 'class="single-point"')).toBe(1);
  });

  it("renders a spreadless group as a point marker too", () => {
    const csv = [
      "seed,method,tau,ansatz,usefulness,novelty",
      "0,qel,,HEA,0.5,0.01",
      "1,qel,,HEA,0.5,0.01",
      "2,qel,,HEA,0.5,0.01",
    ].join("\n");
    const out = renderViolins(csv, { groupBy: ["method"] });
    expect(count(out, 'class="violin"')).toBe(0);
    expect(count(out, 'class="single-point"')).toBe(2);
  });

  it("includes the title when given", () => {
    const out = renderViolins(fixtureText, { groupBy: ["method"], title: "cosine sweep" });
    expect(out).toContain(">cosine sweep</text>");
  });

  it("escapes markup in labels", () => {
    const csv = "method,usefulness,novelty\na<b,0.1,0.2\na<b,0.3,0.4";
    const out = renderViolins(csv, { groupBy: ["method"] });
    expect(out).toContain("a&lt;b");
    expect(out).not.toContain("<b</");
  });

  it("fails on an empty CSV", () => {
    expect(() => renderViolins("seed,method,tau,ansatz,usefulness,novelty", {
      groupBy: ["method"],
    })).toThrow(/no data rows/);
  });

  it("fails with the missing column named", () => {
    expect(() => renderViolins("method,usefulness\nqel,0.5", { groupBy: ["method"] })).toThrow(
      /novelty/,
    );
  });
});
