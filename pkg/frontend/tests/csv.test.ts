import { readFile } from "fs/promises";
import path from "path";
import { describe, expect, it } from "vitest";

import { MissingColumnError, parseSeriesCsv, requireColumn } from "../src/csv.js";

const FIXTURES = path.join(__dirname, "fixtures", "five_attacks_dry");

describe("parseSeriesCsv", () => {
  it("reads a fixture run with the full channel set", async () => {
    const file = path.join(FIXTURES, "constant_torque.csv");
    const table = parseSeriesCsv(await readFile(file, "utf-8"), file);
    expect(table.rows).toBeGreaterThan(100);
    for (const name of [
      "t",
      "v",
      "omega",
      "lambda",
      "e_L",
      "mu",
      "torque_cmd",
      "torque_applied",
      "d_hat",
      "delta_e_actual",
    ]) {
      expect(table.columns.has(name)).toBe(true);
      expect(requireColumn(table, name)).toHaveLength(table.rows);
    }
    const t = requireColumn(table, "t");
    expect(t[0]).toBe(0);
    for (let i = 1; i < t.length; i++) {
      expect(t[i]).toBeGreaterThan(t[i - 1]);
    }
  });

  it("preserves full-precision values", () => {
    const table = parseSeriesCsv(
      "t,v\n0.0,0.1000000000000000055511151231257827\n",
      "inline.csv",
    );
    expect(requireColumn(table, "v")[0]).toBe(0.1);
  });

  it("names the file and column when a column is missing", () => {
    const table = parseSeriesCsv("t,v\n0,1\n", "runs/a.csv");
    expect(() => requireColumn(table, "d_hat")).toThrowError(
      MissingColumnError,
    );
    try {
      requireColumn(table, "d_hat");
    } catch (err) {
      expect((err as Error).message).toContain("runs/a.csv");
      expect((err as Error).message).toContain("d_hat");
    }
  });

  it("rejects ragged rows", () => {
    expect(() => parseSeriesCsv("t,v\n0,1,2\n", "x.csv")).toThrowError(
      /row 1/,
    );
  });

  it("rejects empty documents", () => {
    expect(() => parseSeriesCsv("t,v\n", "x.csv")).toThrowError(/no data/);
  });
});
