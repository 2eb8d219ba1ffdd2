import { createHash } from "crypto";
import { mkdtemp, readFile, readdir, rm, stat } from "fs/promises";
import os from "os";
import path from "path";
import { afterEach, describe, expect, it } from "vitest";

import { loadBatch } from "../src/batch.js";
import { main, plot } from "../src/cli.js";
import { disturbanceFigure, profileFigure } from "../src/figure.js";
import { layoutFigure, formatTick, niceTicks } from "../src/layout.js";
import { renderPng } from "../src/png.js";
import { renderSvg } from "../src/svg.js";

const FIXTURES = path.join(__dirname, "fixtures", "five_attacks_dry");

const tmpdirs: string[] = [];
async function tmpdir(): Promise<string> {
  const dir = await mkdtemp(path.join(os.tmpdir(), "lockup-plot-"));
  tmpdirs.push(dir);
  return dir;
}

afterEach(async () => {
  while (tmpdirs.length > 0) {
    await rm(tmpdirs.pop()!, { recursive: true, force: true });
  }
});

function sha256(data: string | Buffer): string {
  return createHash("sha256").update(data).digest("hex");
}

describe("axis helpers", () => {
  it("nice ticks cover the range at decade steps", () => {
    expect(niceTicks(0, 3)).toEqual([0, 0.5, 1, 1.5, 2, 2.5, 3]);
    expect(niceTicks(0, 1.05)).toEqual([0, 0.2, 0.4, 0.6, 0.8, 1]);
  });

  it("tick labels are compact", () => {
    expect(formatTick(0)).toBe("0");
    expect(formatTick(0.5)).toBe("0.5");
    expect(formatTick(30)).toBe("30");
    expect(formatTick(12345)).toBe("1.2e+4");
  });
});

describe("svg rendering", () => {
  it("draws five profile traces and the legend labels", async () => {
    const runs = await loadBatch(FIXTURES);
    const svg = renderSvg(layoutFigure(profileFigure(runs)));
    const polylines = svg.match(/<polyline/g) ?? [];
    // 10 data traces (5 per panel) plus 5 legend swatch lines drawn as lines
    expect(polylines.length).toBe(10);
    for (const label of [
      "constant torque",
      "phi_p controller",
      "phi_1 controller",
      "phi_p + NDOB",
      "phi_1 + NDOB",
    ]) {
      expect(svg).toContain(`>${label}</text>`);
    }
    expect(svg).toContain("vehicle speed");
    expect(svg).toContain("wheel slip");
    expect(svg).toContain("time (s)");
  });

  it("disturbance overlay has two solid and two dashed traces", async () => {
    const runs = await loadBatch(FIXTURES);
    const svg = renderSvg(layoutFigure(disturbanceFigure(runs)));
    const traces = svg.match(/<polyline[^>]*>/g) ?? [];
    expect(traces).toHaveLength(4);
    expect(traces.filter((t) => t.includes("stroke-dasharray"))).toHaveLength(
      2,
    );
    expect(svg).toContain("estimate");
    expect(svg).toContain("actual");
  });

  it("is deterministic", async () => {
    const runs = await loadBatch(FIXTURES);
    const a = renderSvg(layoutFigure(profileFigure(runs)));
    const b = renderSvg(layoutFigure(profileFigure(await loadBatch(FIXTURES))));
    expect(sha256(a)).toBe(sha256(b));
  });

  it("escapes markup in labels", async () => {
    const runs = await loadBatch(FIXTURES);
    runs[0].label = "a<b&c";
    const svg = renderSvg(layoutFigure(profileFigure(runs.slice(0, 1))));
    expect(svg).toContain("a&lt;b&amp;c");
  });
});

describe("png rendering", () => {
  it("produces a valid signed PNG with the right geometry", async () => {
    const runs = await loadBatch(FIXTURES);
    const fig = profileFigure(runs);
    const png = renderPng(layoutFigure(fig));
    expect([...png.subarray(0, 8)]).toEqual([
      0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a,
    ]);
    // IHDR width/height at fixed offsets, 2x supersampling
    expect(png.readUInt32BE(16)).toBe(fig.width * 2);
    expect(png.readUInt32BE(20)).toBe(fig.height * 2);
  });

  it("is deterministic", async () => {
    const runs = await loadBatch(FIXTURES);
    const a = renderPng(layoutFigure(disturbanceFigure(runs)));
    const b = renderPng(layoutFigure(disturbanceFigure(runs)));
    expect(sha256(a)).toBe(sha256(b));
  });
});

describe("plot command", () => {
  it("writes the two-image set and leaves inputs untouched", async () => {
    const before = new Map<string, string>();
    for (const f of await readdir(FIXTURES)) {
      before.set(f, sha256(await readFile(path.join(FIXTURES, f))));
    }
    const out = await tmpdir();
    const result = await plot(FIXTURES, out, "svg");
    expect(result.written.map((f) => path.basename(f))).toEqual([
      "profiles.svg",
      "disturbance.svg",
    ]);
    for (const f of result.written) {
      expect((await stat(f)).size).toBeGreaterThan(1000);
    }
    for (const [f, digest] of before) {
      expect(sha256(await readFile(path.join(FIXTURES, f)))).toBe(digest);
    }
  });

  it("rerun overwrites with identical bytes", async () => {
    const out = await tmpdir();
    await plot(FIXTURES, out, "png");
    const first = await readFile(path.join(out, "profiles.png"));
    await plot(FIXTURES, out, "png");
    const second = await readFile(path.join(out, "profiles.png"));
    expect(sha256(first)).toBe(sha256(second));
  });

  it("fails on an empty input directory without writing outputs", async () => {
    const empty = await tmpdir();
    const out = await tmpdir();
    const code = await main([
      "--indir", empty, "--outdir", out, "--format", "svg",
    ]);
    expect(code).toBe(1);
    expect(await readdir(out)).toEqual([]);
  });

  it("rejects unknown formats and missing flags", async () => {
    expect(await main(["--indir", FIXTURES])).toBe(1);
    expect(
      await main(["--indir", FIXTURES, "--outdir", await tmpdir(),
                  "--format", "pdf"]),
    ).toBe(1);
  });
});
