/**
 * Deterministic SVG rendering of error-rate series on a log axis.
 *
 * Output is a plain string with fixed attribute order and fixed
 * two-decimal coordinates, so identical inputs give identical bytes.
 * Points with a zero value cannot sit on a log axis; they are dropped
 * and reported in the returned notes.
 */

import { Series } from "./csv.js";
import { decadeTicks, linScale, logScale, snapOut, steppedTicks } from "./scale.js";

export interface RenderOptions {
  /** plot the ser column (sweep files only) instead of wer */
  ser?: boolean;
  title?: string;
  width?: number;
  height?: number;
}

export interface Figure {
  svg: string;
  notes: string[];
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

const DASH_BY_KIND: Record<string, string> = {
  hard_decision: "7 4",
  union_bound: "2 3",
};

function fmt2(v: number): string {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

function decadeLabel(tick: number): string {
  const e = Math.round(Math.log10(tick));
  return e === 0 ? "1" : `1e${e}`;
}

function xTickLabel(v: number): string {
  return Number.isInteger(v) ? v.toFixed(0) : v.toFixed(1);
}

interface Drawable {
  series: Series;
  color: string;
  dash: string;
  pts: { x: number; y: number; ciLo?: number; ciHi?: number }[];
}

export function buildFigure(seriesList: Series[], opts: RenderOptions = {}): Figure {
  const useSer = opts.ser ?? false;
  const width = opts.width ?? 800;
  const height = opts.height ?? 560;
  const margin = { left: 72, right: 24, top: opts.title ? 40 : 24, bottom: 56 };
  const notes: string[] = [];

  const drawables: Drawable[] = [];
  let vMin = Infinity;
  let vMax = -Infinity;
  let xMin = Infinity;
  let xMax = -Infinity;
  seriesList.forEach((series, si) => {
    if (useSer && !series.sweep) {
      throw new Error(`${series.path}: no "ser" column (curve file); cannot plot --ser`);
    }
    const pts: Drawable["pts"] = [];
    let dropped = 0;
    for (const p of series.points) {
      const v = useSer ? p.ser! : p.wer;
      if (v <= 0) {
        dropped++;
        continue;
      }
      const entry: Drawable["pts"][number] = { x: p.snrDb, y: v };
      if (!useSer && series.sweep && p.ciLo !== undefined && p.ciHi !== undefined) {
        entry.ciLo = p.ciLo;
        entry.ciHi = p.ciHi;
        if (p.ciLo > 0) vMin = Math.min(vMin, p.ciLo);
        vMax = Math.max(vMax, p.ciHi);
      }
      pts.push(entry);
      vMin = Math.min(vMin, v);
      vMax = Math.max(vMax, v);
      xMin = Math.min(xMin, p.snrDb);
      xMax = Math.max(xMax, p.snrDb);
    }
    if (dropped > 0) {
      const col = useSer ? "ser" : "wer";
      notes.push(`omitted ${dropped} zero-${col} point${dropped === 1 ? "" : "s"} ` +
                 `from ${series.path} (log axis)`);
    }
    drawables.push({
      series,
      color: PALETTE[si % PALETTE.length]!,
      dash: series.sweep ? "" : (DASH_BY_KIND[series.kind] ?? ""),
      pts,
    });
  });

  if (!Number.isFinite(vMin) || !Number.isFinite(xMin)) {
    throw new Error("nothing to plot: every point has a zero value");
  }

  const [xLo, xHi] = snapOut(xMin - 0.01, xMax + 0.01, 0.5);
  const yTicks = decadeTicks(vMin, vMax);
  let yLo = yTicks[0]!;
  let yHi = yTicks[yTicks.length - 1]!;
  if (yLo === yHi) {
    yHi = yLo * 10;
    yTicks.push(yHi);
  }

  const plotL = margin.left;
  const plotR = width - margin.right;
  const plotT = margin.top;
  const plotB = height - margin.bottom;
  const sx = linScale(xLo, xHi, plotL, plotR);
  const sy = logScale(yLo, yHi, plotB, plotT);

  const out: string[] = [];
  out.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
           `height="${height}" viewBox="0 0 ${width} ${height}">`);
  out.push(`<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>`);
  if (opts.title) {
    out.push(`<text x="${fmt2(width / 2)}" y="22" text-anchor="middle" ` +
             `font-family="monospace" font-size="15" fill="#000000">` +
             `${escapeXml(opts.title)}</text>`);
  }

  for (const tick of yTicks) {
    const y = fmt2(sy.map(tick));
    out.push(`<line x1="${fmt2(plotL)}" y1="${y}" x2="${fmt2(plotR)}" y2="${y}" ` +
             `stroke="#dddddd" stroke-width="1"/>`);
    out.push(`<text x="${fmt2(plotL - 8)}" y="${y}" text-anchor="end" ` +
             `dominant-baseline="middle" font-family="monospace" font-size="12" ` +
             `fill="#000000">${decadeLabel(tick)}</text>`);
  }
  const xStep = xHi - xLo <= 6 ? 0.5 : 1;
  for (const tick of steppedTicks(xLo, xHi, xStep)) {
    const x = fmt2(sx.map(tick));
    out.push(`<line x1="${x}" y1="${fmt2(plotB)}" x2="${x}" y2="${fmt2(plotB + 5)}" ` +
             `stroke="#000000" stroke-width="1"/>`);
    out.push(`<text x="${x}" y="${fmt2(plotB + 20)}" text-anchor="middle" ` +
             `font-family="monospace" font-size="12" fill="#000000">` +
             `${xTickLabel(tick)}</text>`);
  }
  out.push(`<rect x="${fmt2(plotL)}" y="${fmt2(plotT)}" ` +
           `width="${fmt2(plotR - plotL)}" height="${fmt2(plotB - plotT)}" ` +
           `fill="none" stroke="#000000" stroke-width="1"/>`);
  out.push(`<text x="${fmt2((plotL + plotR) / 2)}" y="${fmt2(height - 14)}" ` +
           `text-anchor="middle" font-family="monospace" font-size="13" ` +
           `fill="#000000">snr_db</text>`);
  out.push(`<text x="20" y="${fmt2((plotT + plotB) / 2)}" text-anchor="middle" ` +
           `font-family="monospace" font-size="13" fill="#000000" ` +
           `transform="rotate(-90 20 ${fmt2((plotT + plotB) / 2)})">` +
           `${useSer ? "ser" : "wer"}</text>`);

  for (const d of drawables) {
    if (d.pts.length === 0) continue;
    const dash = d.dash ? ` stroke-dasharray="${d.dash}"` : "";
    const coords = d.pts
      .map((p) => `${fmt2(sx.map(p.x))},${fmt2(sy.map(p.y))}`)
      .join(" ");
    if (d.pts.length > 1) {
      out.push(`<polyline points="${coords}" fill="none" stroke="${d.color}" ` +
               `stroke-width="1.5"${dash}/>`);
    }
    for (const p of d.pts) {
      if (p.ciLo !== undefined && p.ciHi !== undefined && p.ciHi > 0) {
        // a zero lower endpoint cannot appear on the log axis; clamp to the frame
        const loV = Math.max(p.ciLo, yLo);
        const x = fmt2(sx.map(p.x));
        const y1 = fmt2(sy.map(Math.min(p.ciHi, yHi)));
        const y2 = fmt2(sy.map(Math.max(loV, yLo)));
        out.push(`<line x1="${x}" y1="${y1}" x2="${x}" y2="${y2}" ` +
                 `stroke="${d.color}" stroke-width="1"/>`);
        for (const yv of [y1, y2]) {
          out.push(`<line x1="${fmt2(sx.map(p.x) - 4)}" y1="${yv}" ` +
                   `x2="${fmt2(sx.map(p.x) + 4)}" y2="${yv}" ` +
                   `stroke="${d.color}" stroke-width="1"/>`);
        }
      }
      if (d.series.sweep) {
        out.push(`<circle cx="${fmt2(sx.map(p.x))}" cy="${fmt2(sy.map(p.y))}" ` +
                 `r="3" fill="${d.color}"/>`);
      }
    }
  }

  const legendX = plotR - 8;
  let legendY = plotT + 18;
  for (const d of drawables) {
    const dash = d.dash ? ` stroke-dasharray="${d.dash}"` : "";
    out.push(`<line x1="${fmt2(legendX - 150)}" y1="${fmt2(legendY - 4)}" ` +
             `x2="${fmt2(legendX - 118)}" y2="${fmt2(legendY - 4)}" ` +
             `stroke="${d.color}" stroke-width="1.5"${dash}/>`);
    out.push(`<text x="${fmt2(legendX - 110)}" y="${fmt2(legendY)}" ` +
             `text-anchor="start" font-family="monospace" font-size="12" ` +
             `fill="#000000">${escapeXml(d.series.label)}</text>`);
    legendY += 18;
  }

  out.push("</svg>");
  return { svg: out.join("\n") + "\n", notes };
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
