import { describe, expect, it } from "vitest";

import { parseSeries } from "../src/csv";

const CURVE = "# kind=hard_decision\nsnr_db,wer\n5,0.0775884\n6,0.0287889\n";
const SWEEP =
  "snr_db,trials,word_errors,frac_failures,ml_errors,wer,wer_ci_lo,wer_ci_hi,ser\n" +
  "5,2000,241,170,71,0.1205,0.1062,0.13475,0.0269\n" +
  "8,2000,0,0,0,0,0,0.001843,0\n";

describe("curve files", () => {
  it("parses the kind comment and rows", () => {
    const s = parseSeries(CURVE, "hd.csv", "hd");
    expect(s.kind).toBe("hard_decision");
    expect(s.sweep).toBe(false);
    expect(s.points).toHaveLength(2);
    expect(s.points[0]).toEqual({ snrDb: 5, wer: 0.0775884 });
  });

  it("kind comment is optional", () => {
    const s = parseSeries("snr_db,wer\n5,0.1\n", "x.csv", "x");
    expect(s.kind).toBe("");
  });

  it("rejects a wrong header naming the column", () => {
    expect(() => parseSeries("snr_db,werp\n5,0.1\n", "x.csv", "x"))
      .toThrow('x.csv: header column 2 should be "wer", found "werp"');
  });

  it("rejects a header missing wer entirely", () => {
    expect(() => parseSeries("snr_db,foo,bar\n1,2,3\n", "x.csv", "x"))
      .toThrow('x.csv: missing column "wer"');
  });

  it("rejects short rows with the line number", () => {
    expect(() => parseSeries("snr_db,wer\n5\n", "x.csv", "x"))
      .toThrow("x.csv:2: expected 2 fields, got 1");
  });

  it("rejects non-numeric cells naming the column", () => {
    expect(() => parseSeries("snr_db,wer\n5,oops\n", "x.csv", "x"))
      .toThrow('x.csv:2: column "wer" is not a number: "oops"');
  });

  it("rejects negative rates", () => {
    expect(() => parseSeries("snr_db,wer\n5,-0.1\n", "x.csv", "x"))
      .toThrow('x.csv:2: column "wer" must be >= 0');
  });

  it("rejects an empty file and a header-only file", () => {
    expect(() => parseSeries("", "x.csv", "x")).toThrow("x.csv: no header line");
    expect(() => parseSeries("snr_db,wer\n", "x.csv", "x"))
      .toThrow("x.csv: no data rows");
  });
});

describe("sweep files", () => {
  it("parses confidence bounds and ser", () => {
    const s = parseSeries(SWEEP, "sim.csv", "sim");
    expect(s.sweep).toBe(true);
    expect(s.points[0]).toEqual(
      { snrDb: 5, wer: 0.1205, ciLo: 0.1062, ciHi: 0.13475, ser: 0.0269 });
    expect(s.points[1]!.wer).toBe(0);
  });

  it("rejects a renamed sweep column by position", () => {
    const bad = SWEEP.replace("wer_ci_lo", "ci_low");
    expect(() => parseSeries(bad, "sim.csv", "sim"))
      .toThrow('sim.csv: header column 7 should be "wer_ci_lo", found "ci_low"');
  });

  it("skips blank and comment rows inside the body", () => {
    const s = parseSeries("snr_db,wer\n5,0.1\n\n# note\n6,0.05\n", "x.csv", "x");
    expect(s.points).toHaveLength(2);
  });

  it("accepts CRLF line endings", () => {
    const s = parseSeries("snr_db,wer\r\n5,0.1\r\n", "x.csv", "x");
    expect(s.points).toEqual([{ snrDb: 5, wer: 0.1 }]);
  });
});
