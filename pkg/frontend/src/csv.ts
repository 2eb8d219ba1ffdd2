/**
 * Reader for lockupsim series CSVs.
 *
 * Schema: header row naming the channels, then one row of full-precision
 * decimals per sample (t, v, omega, lambda, e_L, mu, torque_cmd,
 * torque_applied, d_hat, delta_e_actual).
 */

export interface SeriesTable {
  /** source path, used in error messages */
  file: string;
  columns: Map<string, number[]>;
  rows: number;
}

export class MissingColumnError extends Error {
  constructor(
    public readonly file: string,
    public readonly column: string,
  ) {
    super(`${file}: missing column '${column}'`);
    this.name = "MissingColumnError";
  }
}

export function parseSeriesCsv(text: string, file: string): SeriesTable {
  const lines = text.split("\n").filter((l) => l.trim().length > 0);
  if (lines.length < 2) {
    throw new Error(`${file}: no data rows`);
  }
  const names = lines[0].split(",").map((s) => s.trim());
  const columns = new Map<string, number[]>(names.map((n) => [n, []]));
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== names.length) {
      throw new Error(
        `${file}: row ${i} has ${cells.length} cells, expected ${names.length}`,
      );
    }
    for (let j = 0; j < names.length; j++) {
      const value = Number(cells[j]);
      if (Number.isNaN(value) && cells[j].trim() !== "NaN") {
        throw new Error(`${file}: row ${i}, column '${names[j]}': ${cells[j]}`);
      }
      columns.get(names[j])!.push(value);
    }
  }
  return { file, columns, rows: lines.length - 1 };
}

/** Column accessor that reports the offending file and column on absence. */
export function requireColumn(table: SeriesTable, name: string): number[] {
  const col = table.columns.get(name);
  if (col === undefined) {
    throw new MissingColumnError(table.file, name);
  }
  return col;
}
