/**
 * Parsers for the two CSV layouts the decoder toolkit emits.
 *
 * Curve files: an optional "# kind=..." comment, a "snr_db,wer" header,
 * then numeric rows.  Sweep files: the nine-column Monte Carlo schema.
 * All schema problems throw with the file, line, and column named.
 */

export interface Point {
  snrDb: number;
  wer: number;
  ciLo?: number;
  ciHi?: number;
  ser?: number;
}

export interface Series {
  path: string;
  label: string;
  /** from the "# kind=" comment when present, else "" */
  kind: string;
  /** true when the file used the nine-column sweep schema */
  sweep: boolean;
  points: Point[];
}

export const SWEEP_HEADER = [
  "snr_db", "trials", "word_errors", "frac_failures", "ml_errors",
  "wer", "wer_ci_lo", "wer_ci_hi", "ser",
] as const;

export const CURVE_HEADER = ["snr_db", "wer"] as const;

function parseCell(
  tok: string, col: string, path: string, lineNo: number,
): number {
  const v = Number(tok);
  if (tok.trim() === "" || !Number.isFinite(v)) {
    throw new Error(`${path}:${lineNo}: column "${col}" is not a number: "${tok}"`);
  }
  return v;
}

function checkNonNegative(
  v: number, col: string, path: string, lineNo: number,
): number {
  if (v < 0) {
    throw new Error(`${path}:${lineNo}: column "${col}" must be >= 0, got ${v}`);
  }
  return v;
}

function headerError(cols: string[], path: string): Error {
  const want =
    cols.length === SWEEP_HEADER.length ? SWEEP_HEADER :
    cols.length === CURVE_HEADER.length ? CURVE_HEADER : null;
  if (want) {
    for (let i = 0; i < want.length; i++) {
      if (cols[i] !== want[i]) {
        return new Error(
          `${path}: header column ${i + 1} should be "${want[i]}", found "${cols[i]}"`);
      }
    }
  }
  for (const required of ["snr_db", "wer"]) {
    if (!cols.includes(required)) {
      return new Error(`${path}: missing column "${required}" in header`);
    }
  }
  return new Error(
    `${path}: unrecognized header "${cols.join(",")}"; expected ` +
    `"${CURVE_HEADER.join(",")}" or the sweep schema`);
}

export function parseSeries(text: string, path: string, label: string): Series {
  const lines = text.split("\n").map((l) => l.replace(/\r$/, ""));
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();

  let kind = "";
  let idx = 0;
  while (idx < lines.length && lines[idx]!.startsWith("#")) {
    const m = /^#\s*kind=(\S+)\s*$/.exec(lines[idx]!);
    if (m) kind = m[1]!;
    idx++;
  }
  if (idx >= lines.length) {
    throw new Error(`${path}: no header line`);
  }

  const cols = lines[idx]!.split(",");
  idx++;
  const sweep = cols.length === SWEEP_HEADER.length
    && cols.every((c, i) => c === SWEEP_HEADER[i]);
  const curve = cols.length === CURVE_HEADER.length
    && cols.every((c, i) => c === CURVE_HEADER[i]);
  if (!sweep && !curve) throw headerError(cols, path);

  const points: Point[] = [];
  for (; idx < lines.length; idx++) {
    const line = lines[idx]!;
    if (line === "" || line.startsWith("#")) continue;
    const lineNo = idx + 1;
    const toks = line.split(",");
    if (toks.length !== cols.length) {
      throw new Error(
        `${path}:${lineNo}: expected ${cols.length} fields, got ${toks.length}`);
    }
    if (sweep) {
      const cell = (i: number) => parseCell(toks[i]!, cols[i]!, path, lineNo);
      points.push({
        snrDb: cell(0),
        wer: checkNonNegative(cell(5), "wer", path, lineNo),
        ciLo: checkNonNegative(cell(6), "wer_ci_lo", path, lineNo),
        ciHi: checkNonNegative(cell(7), "wer_ci_hi", path, lineNo),
        ser: checkNonNegative(cell(8), "ser", path, lineNo),
      });
    } else {
      points.push({
        snrDb: parseCell(toks[0]!, "snr_db", path, lineNo),
        wer: checkNonNegative(
          parseCell(toks[1]!, "wer", path, lineNo), "wer", path, lineNo),
      });
    }
  }
  if (points.length === 0) {
    throw new Error(`${path}: no data rows`);
  }
  return { path, label, kind, sweep, points };
}
