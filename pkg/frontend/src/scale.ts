/** Axis mapping helpers.  Pure arithmetic, no state. */

export interface Scale {
  domainMin: number;
  domainMax: number;
  map(v: number): number;
}

export function linScale(
  domainMin: number, domainMax: number, rangeMin: number, rangeMax: number,
): Scale {
  const span = domainMax - domainMin;
  return {
    domainMin,
    domainMax,
    map: (v) => rangeMin + ((v - domainMin) / span) * (rangeMax - rangeMin),
  };
}

/** Maps positive values by their log10.  Values must be > 0. */
export function logScale(
  domainMin: number, domainMax: number, rangeMin: number, rangeMax: number,
): Scale {
  const lo = Math.log10(domainMin);
  const span = Math.log10(domainMax) - lo;
  return {
    domainMin,
    domainMax,
    map: (v) => rangeMin + ((Math.log10(v) - lo) / span) * (rangeMax - rangeMin),
  };
}

/** Powers of ten covering [minPos, maxPos], endpoints included. */
export function decadeTicks(minPos: number, maxPos: number): number[] {
  const lo = Math.floor(Math.log10(minPos) + 1e-12);
  const hi = Math.ceil(Math.log10(maxPos) - 1e-12);
  const ticks: number[] = [];
  // Number("1e-4") is the correctly rounded double; Math.pow(10, -4) is not
  for (let e = lo; e <= hi; e++) ticks.push(Number(`1e${e}`));
  return ticks;
}

/** Multiples of step covering [min, max] after snapping outward. */
export function steppedTicks(min: number, max: number, step: number): number[] {
  const first = Math.ceil(min / step - 1e-9);
  const last = Math.floor(max / step + 1e-9);
  const ticks: number[] = [];
  for (let k = first; k <= last; k++) {
    const v = k * step;
    ticks.push(Math.abs(v) < 1e-12 ? 0 : v);
  }
  return ticks;
}

/** Snap a domain outward to whole multiples of step. */
export function snapOut(min: number, max: number, step: number): [number, number] {
  return [Math.floor(min / step) * step, Math.ceil(max / step) * step];
}
