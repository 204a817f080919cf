import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseSeries } from "../src/csv";
import { buildFigure } from "../src/render";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

function load(name: string, label: string) {
  const path = join(FIXTURES, name);
  return parseSeries(readFileSync(path, "utf8"), name, label);
}

describe("golden figure", () => {
  it("fixed inputs render byte-identical SVG", () => {
    const fig = buildFigure([
      load("hard_decision.csv", "hard decision"),
      load("union_bound.csv", "union bound"),
      load("lp_sim.csv", "lp decoding"),
    ], { title: "word error rate, (11,6,5) ternary code, 3-PSK on AWGN" });
    const golden = readFileSync(join(FIXTURES, "golden_figure.svg"), "utf8");
    expect(fig.svg).toBe(golden);
    expect(fig.notes).toEqual(
      ["omitted 1 zero-wer point from lp_sim.csv (log axis)"]);
  });
});
