import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { main, parseArgs, UsageError } from "../src/cli";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

describe("argument parsing", () => {
  it("splits path:label on the last colon", () => {
    const args = parseArgs(["--out", "f.svg", "a/b.csv:hard decision"]);
    expect(args.inputs).toEqual([{ path: "a/b.csv", label: "hard decision" }]);
  });

  it("defaults the label to the file stem", () => {
    const args = parseArgs(["--out", "f.svg", "curves/union_bound.csv"]);
    expect(args.inputs[0]).toEqual(
      { path: "curves/union_bound.csv", label: "union_bound" });
  });

  it("tolerates a leading program name", () => {
    const args = parseArgs(["plot", "--out", "f.svg", "a.csv"]);
    expect(args.out).toBe("f.svg");
  });

  it("requires --out and at least one input", () => {
    expect(() => parseArgs(["a.csv"])).toThrow(UsageError);
    expect(() => parseArgs(["--out", "f.svg"])).toThrow("no input CSV files");
    expect(() => parseArgs(["--out"])).toThrow("--out needs a file name");
  });

  it("rejects unknown options", () => {
    expect(() => parseArgs(["--out", "f.svg", "--png", "a.csv"]))
      .toThrow("unknown option --png");
  });
});

describe("end to end", () => {
  let dir: string;
  let errOut: string;

  beforeEach(() => {
    dir = mkdtempSync(join(tmpdir(), "plotviz-"));
    errOut = "";
    vi.spyOn(process.stderr, "write").mockImplementation((chunk) => {
      errOut += String(chunk);
      return true;
    });
    vi.spyOn(process.stdout, "write").mockImplementation(() => true);
  });

  afterEach(() => {
    vi.restoreAllMocks();
  });

  it("renders the three-curve figure and notes the zero row", () => {
    const out = join(dir, "fig.svg");
    const rc = main([
      "--out", out,
      join(FIXTURES, "hard_decision.csv") + ":hard decision",
      join(FIXTURES, "union_bound.csv") + ":union bound",
      join(FIXTURES, "lp_sim.csv") + ":lp decoding",
    ]);
    expect(rc).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg).toContain("hard decision");
    expect(errOut).toContain("note: omitted 1 zero-wer point");
  });

  it("reports a schema problem and fails", () => {
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "snr_db,wer\n5,oops\n");
    const rc = main(["--out", join(dir, "f.svg"), bad]);
    expect(rc).toBe(1);
    expect(errOut).toContain('column "wer" is not a number');
  });

  it("reports a missing file and fails", () => {
    const rc = main(["--out", join(dir, "f.svg"), join(dir, "absent.csv")]);
    expect(rc).toBe(1);
    expect(errOut).toContain("error:");
  });

  it("usage errors come back as exit 1 with the usage line", () => {
    const rc = main(["--out"]);
    expect(rc).toBe(1);
    expect(errOut).toContain("usage: plot --out");
  });
});
