import { describe, expect, it } from "vitest";

import { Series } from "../src/csv";
import { buildFigure } from "../src/render";

function curve(path: string, pts: [number, number][], kind = ""): Series {
  return {
    path, label: path, kind, sweep: false,
    points: pts.map(([snrDb, wer]) => ({ snrDb, wer })),
  };
}

function sweep(path: string, rows: [number, number, number, number][]): Series {
  return {
    path, label: path, kind: "", sweep: true,
    points: rows.map(([snrDb, wer, ciLo, ciHi]) =>
      ({ snrDb, wer, ciLo, ciHi, ser: wer / 3 })),
  };
}

describe("zero handling on the log axis", () => {
  it("omits zero points and says so", () => {
    const s = sweep("run.csv", [[5, 0.1, 0.08, 0.12], [6, 0, 0, 0.002]]);
    const fig = buildFigure([s]);
    expect(fig.notes).toEqual(["omitted 1 zero-wer point from run.csv (log axis)"]);
    expect((fig.svg.match(/<circle /g) ?? []).length).toBe(1);
  });

  it("refuses a figure with no positive values", () => {
    const s = curve("flat.csv", [[5, 0], [6, 0]]);
    expect(() => buildFigure([s])).toThrow("nothing to plot");
  });

  it("clamps a zero lower confidence bound instead of computing log(0)", () => {
    const s = sweep("run.csv", [[5, 0.001, 0, 0.0018]]);
    const fig = buildFigure([s]);
    expect(fig.svg).not.toContain("NaN");
    expect(fig.svg).not.toContain("Infinity");
  });
});

describe("series styling", () => {
  it("draws whiskers only for sweep series", () => {
    const withCi = buildFigure([sweep("a.csv", [[5, 0.1, 0.08, 0.12]])]).svg;
    const withoutCi = buildFigure([curve("b.csv", [[5, 0.1], [6, 0.05]])]).svg;
    expect((withCi.match(/<line /g) ?? []).length)
      .toBeGreaterThan((withoutCi.match(/<line /g) ?? []).length);
    expect(withoutCi).not.toContain("<circle");
  });

  it("dashes known analytic kinds", () => {
    const fig = buildFigure([
      curve("hd.csv", [[5, 0.1], [6, 0.05]], "hard_decision"),
      curve("ub.csv", [[5, 0.03], [6, 0.004]], "union_bound"),
    ]);
    expect(fig.svg).toContain('stroke-dasharray="7 4"');
    expect(fig.svg).toContain('stroke-dasharray="2 3"');
  });

  it("rejects --ser for a curve file by name", () => {
    expect(() => buildFigure([curve("hd.csv", [[5, 0.1]])], { ser: true }))
      .toThrow('hd.csv: no "ser" column');
  });

  it("plots the ser column when asked", () => {
    const fig = buildFigure([sweep("run.csv", [[5, 0.09, 0.07, 0.11]])],
                            { ser: true });
    expect(fig.svg).toContain(">ser</text>");
  });
});

describe("determinism", () => {
  it("identical input gives identical bytes", () => {
    const make = () => buildFigure([
      curve("hd.csv", [[5, 0.1], [6, 0.05]], "hard_decision"),
      sweep("run.csv", [[5, 0.12, 0.1, 0.14], [6, 0.04, 0.03, 0.05]]),
    ], { title: "figure" });
    expect(make().svg).toBe(make().svg);
  });

  it("escapes markup in labels and titles", () => {
    const s = curve("x.csv", [[5, 0.1], [6, 0.05]]);
    s.label = "a<b & \"c\"";
    const fig = buildFigure([s], { title: "t<u>" });
    expect(fig.svg).toContain("a&lt;b &amp; &quot;c&quot;");
    expect(fig.svg).toContain("t&lt;u&gt;");
    expect(fig.svg).not.toContain("<u>");
  });
});
