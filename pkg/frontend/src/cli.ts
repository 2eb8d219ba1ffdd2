#!/usr/bin/env node
/**
 * Figure generation for lockupsim batch outputs.
 *
 * Usage:
 *   lockup-plot --indir results/dry --outdir figures [--format svg|png]
 *
 * Writes two images: `profiles.<fmt>` (per-scenario speed and slip traces
 * with a legend) and `disturbance.<fmt>` (observer estimate vs the actual
 * lumped disturbance for observer-enabled runs).  Inputs are read-only and
 * the outputs are byte-for-byte reproducible.
 */

import { mkdir, writeFile } from "fs/promises";
import path from "path";
import { parseArgs } from "util";

import { loadBatch } from "./batch.js";
import { disturbanceFigure, profileFigure } from "./figure.js";
import { layoutFigure } from "./layout.js";
import { renderPng } from "./png.js";
import { renderSvg } from "./svg.js";

export interface PlotResult {
  written: string[];
  skipped: string[];
}

export async function plot(
  indir: string,
  outdir: string,
  format: "svg" | "png",
): Promise<PlotResult> {
  const runs = await loadBatch(indir);
  await mkdir(outdir, { recursive: true });

  const render = (figure: ReturnType<typeof profileFigure>) => {
    const scene = layoutFigure(figure);
    return format === "svg" ? renderSvg(scene) : renderPng(scene);
  };

  const written: string[] = [];
  const skipped: string[] = [];

  const profilesPath = path.join(outdir, `profiles.${format}`);
  await writeFile(profilesPath, render(profileFigure(runs)));
  written.push(profilesPath);

  if (runs.some((r) => r.ndob)) {
    const distPath = path.join(outdir, `disturbance.${format}`);
    await writeFile(distPath, render(disturbanceFigure(runs)));
    written.push(distPath);
  } else {
    skipped.push("disturbance (no observer-enabled runs)");
  }
  return { written, skipped };
}

export async function main(argv: string[]): Promise<number> {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        indir: { type: "string" },
        outdir: { type: "string" },
        format: { type: "string", default: "svg" },
      },
    }));
  } catch (err) {
    console.error(String(err));
    return 1;
  }
  if (!values.indir || !values.outdir) {
    console.error(
      "usage: lockup-plot --indir DIR --outdir DIR [--format svg|png]",
    );
    return 1;
  }
  if (values.format !== "svg" && values.format !== "png") {
    console.error(`unsupported format '${values.format}' (svg or png)`);
    return 1;
  }
  try {
    const result = await plot(values.indir, values.outdir, values.format);
    for (const file of result.written) {
      console.log(`wrote ${file}`);
    }
    for (const note of result.skipped) {
      console.log(`skipped ${note}`);
    }
    return 0;
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${path.resolve(process.argv[1])}`).href;
if (invokedDirectly) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
