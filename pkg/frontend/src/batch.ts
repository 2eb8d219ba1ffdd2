/**
 * Discovery of lockupsim batch output directories: every `<name>.csv` with a
 * `<name>.manifest.json` sidecar becomes one run.  Labels and observer flags
 * come from the manifests, never from filenames.
 */

import { readdir, readFile } from "fs/promises";
import path from "path";

import { parseSeriesCsv, type SeriesTable } from "./csv.js";

export interface RunManifest {
  tool: string;
  version: string;
  label: string;
  config: Record<string, Record<string, unknown>>;
  backend: string;
  termination: string;
  ndob_enabled: boolean;
  rows: number;
  metrics: {
    time_to_lockup: number | null;
    success: boolean;
    final_v: number;
    peak_torque_cmd: number;
    settling_margin: number | null;
  };
  outputs: string[];
}

export interface BatchRun {
  name: string;
  label: string;
  ndob: boolean;
  table: SeriesTable;
  manifest: RunManifest;
}

/** Canonical five-attack ordering; unknown names sort after, alphabetically. */
const SUITE_ORDER = [
  "constant_torque",
  "phi_p",
  "phi_1",
  "phi_p_ndob",
  "phi_1_ndob",
];

function rank(name: string): number {
  const i = SUITE_ORDER.indexOf(name);
  return i === -1 ? SUITE_ORDER.length : i;
}

export async function loadBatch(indir: string): Promise<BatchRun[]> {
  let entries: string[];
  try {
    entries = await readdir(indir);
  } catch (err) {
    throw new Error(`cannot read input directory ${indir}: ${err}`);
  }
  const csvs = entries.filter((e) => e.endsWith(".csv")).sort();
  const runs: BatchRun[] = [];
  for (const csvName of csvs) {
    const name = csvName.slice(0, -4);
    const manifestName = `${name}.manifest.json`;
    if (!entries.includes(manifestName)) {
      continue; // CSV without a manifest is not a run of ours
    }
    const csvPath = path.join(indir, csvName);
    const manifest = JSON.parse(
      await readFile(path.join(indir, manifestName), "utf-8"),
    ) as RunManifest;
    const table = parseSeriesCsv(await readFile(csvPath, "utf-8"), csvPath);
    runs.push({
      name,
      label: manifest.label ?? name,
      ndob: Boolean(manifest.ndob_enabled),
      table,
      manifest,
    });
  }
  if (runs.length === 0) {
    throw new Error(
      `no runs found in ${indir} (expected <name>.csv with <name>.manifest.json)`,
    );
  }
  runs.sort((a, b) =>
    rank(a.name) - rank(b.name) || a.name.localeCompare(b.name),
  );
  return runs;
}
