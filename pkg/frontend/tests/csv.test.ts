import { readFileSync } from "node:fs";
import path from "node:path";
import { describe, expect, it } from "vitest";

import {
  CsvError,
  column,
  parseConvergenceCsv,
  parseRunCsv,
  resolveErrorColumn,
  stateColumns,
} from "../src/csv.js";

const FIXTURES = path.join(import.meta.dirname, "fixtures");

function fixture(name: string): string {
  return readFileSync(path.join(FIXTURES, name), "utf-8");
}

describe("parseRunCsv", () => {
  it("reads a rigid-body run table", () => {
    const table = parseRunCsv("euler.csv", fixture("euler_m1_short.csv"));
    expect(table.columns).toEqual([
      "t", "y1", "y2", "y3", "energy_err", "casimir_quadratic_err", "global_err", "iters",
    ]);
    // 200 steps plus the initial row
    expect(table.rows).toHaveLength(201);
    expect(table.rows[0]![0]).toBe(0);
    expect(table.rows[0]![4]).toBe(0);
    expect(stateColumns(table)).toEqual(["y1", "y2", "y3"]);
  });

  it("parses empty global_err cells as NaN", () => {
    const table = parseRunCsv("lv2.csv", fixture("lv2_m1_short.csv"));
    const g = column(table, "global_err");
    expect(g.every(Number.isNaN)).toBe(true);
    expect(stateColumns(table)).toEqual(["y1", "y2"]);
  });

  it("rejects a header-only file", () => {
    const text = "t,y1,y2,energy_err,global_err,iters\n";
    expect(() => parseRunCsv("empty.csv", text)).toThrow(/empty\.csv: no data rows/);
  });

  it("rejects a foreign header", () => {
    expect(() => parseRunCsv("x.csv", "a,b,c\n1,2,3\n")).toThrow(/not a run table/);
  });

  it("rejects ragged rows with a line number", () => {
    const text = "t,y1,energy_err,global_err,iters\n0,1,0,,0\n0.1,1\n";
    expect(() => parseRunCsv("r.csv", text)).toThrow(/r\.csv: line 3/);
  });

  it("rejects non-numeric cells", () => {
    const text = "t,y1,energy_err,global_err,iters\n0,one,0,,0\n";
    expect(() => parseRunCsv("r.csv", text)).toThrow(/non-numeric cell 'one'/);
  });
});

describe("column selection", () => {
  const table = parseRunCsv("euler.csv", fixture("euler_m1_short.csv"));

  it("resolves the energy and casimir selectors", () => {
    expect(resolveErrorColumn(table, "energy")).toBe("energy_err");
    expect(resolveErrorColumn(table, "casimir")).toBe("casimir_quadratic_err");
    expect(resolveErrorColumn(table, "casimir_quadratic_err")).toBe("casimir_quadratic_err");
  });

  it("names the file when a column is missing", () => {
    const lv2 = parseRunCsv("lv2_m1_short.csv", fixture("lv2_m1_short.csv"));
    expect(() => resolveErrorColumn(lv2, "casimir")).toThrow(
      /lv2_m1_short\.csv: missing column casimir/,
    );
    expect(() => column(lv2, "y9")).toThrow(/lv2_m1_short\.csv: missing column y9/);
    expect(() => resolveErrorColumn(lv2, "bogus_err")).toThrow(CsvError);
  });
});

describe("parseConvergenceCsv", () => {
  it("reads the converge subcommand output", () => {
    const table = parseConvergenceCsv("c.csv", fixture("convergence_euler_m2.csv"));
    expect(table.h).toEqual([0.2, 0.1, 0.05, 0.025]);
    expect(table.globalErr).toHaveLength(4);
    expect(Number.isNaN(table.observedOrder[0]!)).toBe(true);
    // Fourth-order method: orders near 4 from the second row on
    for (const p of table.observedOrder.slice(1)) {
      expect(p).toBeGreaterThan(3.5);
      expect(p).toBeLessThan(4.5);
    }
  });

  it("needs at least two rows", () => {
    const text = "h,global_err,observed_order\n0.2,1e-4,\n";
    expect(() => parseConvergenceCsv("one.csv", text)).toThrow(
      /one\.csv: needs at least 2 rows, found 1/,
    );
  });

  it("rejects a run-table header", () => {
    expect(() => parseConvergenceCsv("c.csv", fixture("euler_m1_short.csv"))).toThrow(
      /not a convergence table/,
    );
  });
});
