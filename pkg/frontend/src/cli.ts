#!/usr/bin/env node
/**
 * plot --out fig.svg [--ser] [--title text] curve1.csv:label1 ...
 *
 * Reads curve and sweep CSVs produced by the decoding toolkit and
 * writes one SVG figure.  Input labels default to the file stem.
 * Exit code 0 on success, 1 on any usage, schema, or file error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";
import { pathToFileURL } from "node:url";

import { parseSeries, Series } from "./csv.js";
import { buildFigure } from "./render.js";

export class UsageError extends Error {}

export interface CliArgs {
  out: string;
  ser: boolean;
  title?: string;
  inputs: { path: string; label: string }[];
}

const USAGE =
  "usage: plot --out fig.svg [--ser] [--title text] file.csv[:label] ...";

export function parseArgs(argv: string[]): CliArgs {
  const args: CliArgs = { out: "", ser: false, inputs: [] };
  let i = 0;
  if (argv[0] === "plot") i = 1; // tolerate the program name
  for (; i < argv.length; i++) {
    const tok = argv[i]!;
    if (tok === "--out") {
      const v = argv[++i];
      if (v === undefined) throw new UsageError("--out needs a file name");
      args.out = v;
    } else if (tok === "--ser") {
      args.ser = true;
    } else if (tok === "--title") {
      const v = argv[++i];
      if (v === undefined) throw new UsageError("--title needs a value");
      args.title = v;
    } else if (tok.startsWith("--")) {
      throw new UsageError(`unknown option ${tok}`);
    } else {
      const sep = tok.lastIndexOf(":");
      if (sep > 0 && sep < tok.length - 1) {
        args.inputs.push({ path: tok.slice(0, sep), label: tok.slice(sep + 1) });
      } else {
        const stem = basename(tok).replace(/\.[^.]*$/, "");
        args.inputs.push({ path: tok, label: stem });
      }
    }
  }
  if (args.out === "") throw new UsageError("--out is required");
  if (args.inputs.length === 0) throw new UsageError("no input CSV files given");
  return args;
}

export function main(argv: string[]): number {
  let args: CliArgs;
  try {
    args = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n${USAGE}\n`);
    return 1;
  }
  try {
    const series: Series[] = args.inputs.map(({ path, label }) =>
      parseSeries(readFileSync(path, "utf8"), path, label));
    const fig = buildFigure(series, { ser: args.ser, title: args.title });
    for (const note of fig.notes) process.stderr.write(`note: ${note}\n`);
    writeFileSync(args.out, fig.svg);
    process.stdout.write(`wrote ${args.out}\n`);
    return 0;
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

const entry = process.argv[1];
if (entry !== undefined && import.meta.url === pathToFileURL(entry).href) {
  process.exit(main(process.argv.slice(2)));
}
