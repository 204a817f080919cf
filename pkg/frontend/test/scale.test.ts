import { describe, expect, it } from "vitest";

import { decadeTicks, linScale, logScale, snapOut, steppedTicks } from "../src/scale";

describe("linear scale", () => {
  it("maps the domain endpoints to the range endpoints", () => {
    const s = linScale(4, 8, 72, 776);
    expect(s.map(4)).toBe(72);
    expect(s.map(8)).toBe(776);
    expect(s.map(6)).toBeCloseTo(424, 10);
  });
});

describe("log scale", () => {
  it("maps decades evenly, inverted range for a y axis", () => {
    const s = logScale(1e-4, 1, 504, 24);
    expect(s.map(1e-4)).toBeCloseTo(504, 10);
    expect(s.map(1)).toBeCloseTo(24, 10);
    expect(s.map(1e-2)).toBeCloseTo(264, 10);
  });
});

describe("ticks", () => {
  it("decade ticks cover the value range outward", () => {
    expect(decadeTicks(0.0007, 0.2)).toEqual([1e-4, 1e-3, 1e-2, 1e-1, 1]);
  });

  it("decade ticks handle exact powers without overshoot", () => {
    expect(decadeTicks(0.001, 0.1)).toEqual([1e-3, 1e-2, 1e-1]);
  });

  it("stepped ticks stay inside the domain", () => {
    expect(steppedTicks(4.5, 8, 0.5)).toEqual([4.5, 5, 5.5, 6, 6.5, 7, 7.5, 8]);
    expect(steppedTicks(4.4, 8.1, 1)).toEqual([5, 6, 7, 8]);
  });

  it("snapOut widens to whole steps", () => {
    expect(snapOut(4.49, 8.01, 0.5)).toEqual([4, 8.5]);
    expect(snapOut(4.5, 8, 0.5)).toEqual([4.5, 8]);
  });
});
