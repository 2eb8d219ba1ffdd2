/**
 * Figure models for the two-image set: per-scenario speed and slip profiles,
 * and the observer-estimate vs actual-disturbance overlay for observer runs.
 */

import type { BatchRun } from "./batch.js";
import { requireColumn } from "./csv.js";

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  /** dash pattern in figure units; solid when absent */
  dash?: number[];
}

export interface Panel {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  yMin?: number;
  yMax?: number;
  /** draw the legend inside this panel */
  legend: boolean;
}

export interface Figure {
  width: number;
  height: number;
  panels: Panel[];
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
];

export function colorFor(index: number): string {
  return PALETTE[index % PALETTE.length];
}

/** Speed and wheel-slip traces for every run, legend keyed by run label. */
export function profileFigure(runs: BatchRun[]): Figure {
  const speed: Series[] = [];
  const slip: Series[] = [];
  runs.forEach((run, i) => {
    const t = requireColumn(run.table, "t");
    speed.push({
      label: run.label,
      x: t,
      y: requireColumn(run.table, "v"),
      color: colorFor(i),
    });
    slip.push({
      label: run.label,
      x: t,
      y: requireColumn(run.table, "lambda"),
      color: colorFor(i),
    });
  });
  return {
    width: 880,
    height: 620,
    panels: [
      {
        title: "vehicle speed",
        xLabel: "time (s)",
        yLabel: "v (m/s)",
        series: speed,
        yMin: 0,
        legend: true,
      },
      {
        title: "wheel slip",
        xLabel: "time (s)",
        yLabel: "slip",
        series: slip,
        yMin: 0,
        yMax: 1.05,
        legend: false,
      },
    ],
  };
}

/**
 * Observer output against the independently computed lumped disturbance,
 * two traces per observer-enabled run (estimate solid, actual dashed).
 */
export function disturbanceFigure(runs: BatchRun[]): Figure {
  const ndobRuns = runs.filter((r) => r.ndob);
  if (ndobRuns.length === 0) {
    throw new Error("no observer-enabled runs in the batch");
  }
  const series: Series[] = [];
  ndobRuns.forEach((run, i) => {
    const t = requireColumn(run.table, "t");
    series.push({
      label: `${run.label}: estimate`,
      x: t,
      y: requireColumn(run.table, "d_hat"),
      color: colorFor(i),
    });
    series.push({
      label: `${run.label}: actual`,
      x: t,
      y: requireColumn(run.table, "delta_e_actual"),
      color: colorFor(i),
      dash: [6, 4],
    });
  });
  return {
    width: 880,
    height: 360,
    panels: [
      {
        title: "slip-error disturbance: estimate vs actual",
        xLabel: "time (s)",
        yLabel: "disturbance (1/s)",
        series,
        legend: true,
      },
    ],
  };
}
