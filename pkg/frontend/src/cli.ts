#!/usr/bin/env node
/** CLI: render one figure (or all) from an artifact directory.
 *
 *   lrquench-figures --input-dir figdata --figure fig3 --out fig3.svg
 *   lrquench-figures --input-dir figdata --all --out-dir figures/
 */

import { mkdirSync, writeFileSync } from "fs";
import path from "path";

import { buildFigure } from "./figures.js";
import { SchemaError } from "./io.js";
import { renderFigure } from "./svg.js";
import type { FigureId } from "./types.js";

const FIGURES: FigureId[] = ["fig2", "fig3", "fig4", "fig5", "fig6"];

interface Args {
  inputDir: string;
  figure?: FigureId;
  out?: string;
  outDir: string;
  all: boolean;
}

function parseArgs(argv: string[]): Args {
  const args: Args = { inputDir: "figdata", outDir: "figures", all: false };
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    switch (a) {
      case "--input-dir":
        args.inputDir = argv[++i];
        break;
      case "--figure": {
        const f = argv[++i] as FigureId;
        if (!FIGURES.includes(f)) {
          throw new SchemaError(`--figure must be one of ${FIGURES.join(", ")}`);
        }
        args.figure = f;
        break;
      }
      case "--out":
        args.out = argv[++i];
        break;
      case "--out-dir":
        args.outDir = argv[++i];
        break;
      case "--all":
        args.all = true;
        break;
      case "--help":
        console.log(
          "usage: lrquench-figures --input-dir DIR (--figure figN [--out FILE] | --all [--out-dir DIR])"
        );
        process.exit(0);
        break;
      default:
        throw new SchemaError(`unknown argument ${a}`);
    }
  }
  if (!args.all && !args.figure) {
    throw new SchemaError("choose --figure figN or --all");
  }
  return args;
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String((err as Error).message));
    return 2;
  }
  const targets = args.all ? FIGURES : [args.figure as FigureId];
  for (const fig of targets) {
    try {
      const panels = buildFigure(fig, args.inputDir);
      const svg = renderFigure(panels, Math.min(3, panels.length));
      const outPath = args.out && !args.all ? args.out : path.join(args.outDir, `${fig}.svg`);
      mkdirSync(path.dirname(outPath), { recursive: true });
      writeFileSync(outPath, svg);
      console.log(`wrote ${outPath}`);
    } catch (err) {
      if (err instanceof SchemaError) {
        console.error(`${fig}: ${err.message}`);
        return 1;
      }
      throw err;
    }
  }
  return 0;
}

const isDirect =
  process.argv[1] && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (isDirect) {
  process.exit(main(process.argv.slice(2)));
}
