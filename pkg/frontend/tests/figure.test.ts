import path from "path";
import { describe, expect, it } from "vitest";

import { loadBatch } from "../src/batch.js";
import { disturbanceFigure, profileFigure } from "../src/figure.js";

const FIXTURES = path.join(__dirname, "fixtures", "five_attacks_dry");

describe("batch discovery", () => {
  it("finds the five suite runs in canonical order", async () => {
    const runs = await loadBatch(FIXTURES);
    expect(runs.map((r) => r.name)).toEqual([
      "constant_torque",
      "phi_p",
      "phi_1",
      "phi_p_ndob",
      "phi_1_ndob",
    ]);
    expect(runs.map((r) => r.ndob)).toEqual([
      false,
      false,
      false,
      true,
      true,
    ]);
  });

  it("takes labels from manifests, not filenames", async () => {
    const runs = await loadBatch(FIXTURES);
    const labels = Object.fromEntries(runs.map((r) => [r.name, r.label]));
    expect(labels["constant_torque"]).toBe("constant torque");
    expect(labels["phi_1_ndob"]).toBe("phi_1 + NDOB");
  });

  it("errors on an empty directory", async () => {
    await expect(loadBatch(path.join(__dirname))).rejects.toThrowError(
      /no runs found/,
    );
  });
});

describe("profile figure", () => {
  it("has speed and slip panels with one trace per scenario", async () => {
    const runs = await loadBatch(FIXTURES);
    const fig = profileFigure(runs);
    expect(fig.panels).toHaveLength(2);
    const [speed, slip] = fig.panels;
    expect(speed.series).toHaveLength(5);
    expect(slip.series).toHaveLength(5);
    expect(speed.series.map((s) => s.label)).toEqual([
      "constant torque",
      "phi_p controller",
      "phi_1 controller",
      "phi_p + NDOB",
      "phi_1 + NDOB",
    ]);
    expect(speed.legend).toBe(true);
  });

  it("degenerates to a single trace for a single run", async () => {
    const runs = await loadBatch(FIXTURES);
    const fig = profileFigure(runs.slice(0, 1));
    expect(fig.panels[0].series).toHaveLength(1);
    expect(fig.panels[1].series).toHaveLength(1);
  });
});

describe("disturbance figure", () => {
  it("overlays estimate and actual for each observer run", async () => {
    const runs = await loadBatch(FIXTURES);
    const fig = disturbanceFigure(runs);
    expect(fig.panels).toHaveLength(1);
    const series = fig.panels[0].series;
    expect(series).toHaveLength(4); // 2 observer runs x (estimate, actual)
    expect(series.map((s) => s.label)).toEqual([
      "phi_p + NDOB: estimate",
      "phi_p + NDOB: actual",
      "phi_1 + NDOB: estimate",
      "phi_1 + NDOB: actual",
    ]);
    // estimates solid, actuals dashed, paired colors
    expect(series[0].dash).toBeUndefined();
    expect(series[1].dash).toBeDefined();
    expect(series[0].color).toBe(series[1].color);
    expect(series[0].color).not.toBe(series[2].color);
  });

  it("errors when no observer runs exist", async () => {
    const runs = await loadBatch(FIXTURES);
    expect(() => disturbanceFigure(runs.slice(0, 3))).toThrowError(
      /no observer-enabled runs/,
    );
  });
});
