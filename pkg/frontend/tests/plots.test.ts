import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import path from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it, vi } from "vitest";

import { main } from "../src/cli.js";
import { plotConvergence, plotDrift, plotGlobalError, plotTrajectory3d } from "../src/plots.js";

const FIXTURES = path.join(path.dirname(fileURLToPath(import.meta.url)), "fixtures");
const EULER = path.join(FIXTURES, "euler_m1_short.csv");
const LV3 = path.join(FIXTURES, "lv3_m2_short.csv");
const LV2 = path.join(FIXTURES, "lv2_m1_short.csv");
const CONV = path.join(FIXTURES, "convergence_euler_m2.csv");

function tmpPath(name: string): string {
  return path.join(mkdtempSync(path.join(tmpdir(), "plots-")), name);
}

function readSvg(file: string): string {
  const text = readFileSync(file, "utf-8");
  expect(text.startsWith("<svg ")).toBe(true);
  expect(text.trimEnd().endsWith("</svg>")).toBe(true);
  return text;
}

// ---------------------------------------------------------------------------
// Figures from real integrator output
// ---------------------------------------------------------------------------

describe("figures from integrator output", () => {
  it("renders drift and convergence images without error", () => {
    const driftOut = tmpPath("drift.svg");
    const convOut = tmpPath("convergence.svg");

    const drift = plotDrift([EULER, LV3], {
      out: driftOut,
      labels: ["euler m=1", "lv3 m=2"],
    });
    const conv = plotConvergence([CONV], { out: convOut });

    const driftSvg = readSvg(driftOut);
    expect(driftSvg).toContain("euler m=1");
    expect(driftSvg).toContain("lv3 m=2");
    // Energy is preserved to roundoff in both runs, so the fitted drift is tiny.
    expect(drift.series).toHaveLength(2);
    for (const s of drift.series) {
      expect(s.column).toBe("energy_err");
      expect(Math.abs(s.slope!)).toBeLessThan(1e-11);
    }

    const convSvg = readSvg(convOut);
    expect(convSvg).toContain("slope 2");
    expect(convSvg).toContain("slope 4");
    // m=2 data runs parallel to the slope-4 guide
    expect(conv.series[0]!.slope).toBeGreaterThan(3.7);
    expect(conv.series[0]!.slope).toBeLessThan(4.3);
  });

  it("shows monotone casimir growth for the 3-d Lotka-Volterra run", () => {
    const out = tmpPath("lv3_casimir.svg");
    const info = plotDrift([LV3], { out, column: "casimir", linearY: true });
    const plotted = info.series[0]!;
    expect(plotted.column).toBe("casimir_log_err");
    readSvg(out);

    // Fit the file again from scratch with the uncentered normal equations,
    // so the sign check does not share code with the plotting path.
    const lines = readFileSync(LV3, "utf-8").trim().split("\n");
    const ti = lines[0]!.split(",").indexOf("t");
    const ci = lines[0]!.split(",").indexOf("casimir_log_err");
    let n = 0;
    let sx = 0;
    let sy = 0;
    let sxy = 0;
    let sxx = 0;
    for (const line of lines.slice(1)) {
      const cells = line.split(",");
      const t = Number(cells[ti]);
      const c = Number(cells[ci]);
      n += 1;
      sx += t;
      sy += c;
      sxy += t * c;
      sxx += t * t;
    }
    const independent = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    expect(independent).not.toBe(0);
    expect(Math.sign(plotted.slope!)).toBe(Math.sign(independent));
    expect(plotted.slope!).toBeGreaterThan(0);
    const relGap = Math.abs(plotted.slope! - independent) / Math.abs(independent);
    expect(relGap).toBeLessThan(1e-9);
  });

  it("projects the rigid-body orbit", () => {
    const out = tmpPath("orbit.svg");
    const info = plotTrajectory3d([EULER], { out });
    expect(info.series[0]!.points).toBe(201);
    readSvg(out);
  });

  it("plots global error growth for runs with a reference", () => {
    const out = tmpPath("global.svg");
    const info = plotGlobalError([EULER], { out });
    // Second-order method error accumulates over the window.
    expect(info.series[0]!.slope).toBeGreaterThan(0);
    readSvg(out);
  });
});

// ---------------------------------------------------------------------------
// Input validation
// ---------------------------------------------------------------------------

describe("input validation", () => {
  it("reports header-only input as no data rows", () => {
    const csv = tmpPath("header_only.csv");
    writeFileSync(csv, "t,y1,y2,energy_err,global_err,iters\n");
    expect(() => plotDrift([csv], { out: csv.replace(".csv", ".svg") })).toThrow(
      /header_only\.csv: no data rows/,
    );
  });

  it("names the file when the casimir column is missing", () => {
    expect(() => plotDrift([LV2], { out: tmpPath("x.svg"), column: "casimir" })).toThrow(
      /lv2_m1_short\.csv: missing column casimir/,
    );
  });

  it("needs three state columns for trajectory projections", () => {
    expect(() => plotTrajectory3d([LV2], { out: tmpPath("x.svg") })).toThrow(
      /needs 3 state columns, found 2/,
    );
  });

  it("rejects runs without reference values for global error", () => {
    expect(() => plotGlobalError([LV2], { out: tmpPath("x.svg") })).toThrow(
      /no global error values/,
    );
  });

  it("only writes svg output", () => {
    expect(() => plotDrift([EULER], { out: tmpPath("x.png") })).toThrow(
      /must be an \.svg path/,
    );
  });
});

// ---------------------------------------------------------------------------
// CLI
// ---------------------------------------------------------------------------

describe("cli", () => {
  it("runs the drift kind end to end", () => {
    const out = tmpPath("cli_drift.svg");
    const log = vi.spyOn(console, "log").mockImplementation(() => {});
    try {
      const rc = main([
        "drift",
        "--in", EULER,
        "--in", LV3,
        "--out", out,
        "--labels", "m=1",
        "--labels", "m=2",
      ]);
      expect(rc).toBe(0);
      expect(log).toHaveBeenCalledWith(`wrote ${out}`);
    } finally {
      log.mockRestore();
    }
    expect(existsSync(out)).toBe(true);
  });

  it("prints the fitted slope for drift columns", () => {
    const out = tmpPath("cli_casimir.svg");
    const log = vi.spyOn(console, "log").mockImplementation(() => {});
    try {
      expect(main(["drift", "--in", LV3, "--out", out, "--column", "casimir", "--linear"])).toBe(0);
      const lines = log.mock.calls.map((c) => String(c[0]));
      expect(lines.some((l) => l.includes("casimir_log_err") && l.includes("slope="))).toBe(true);
    } finally {
      log.mockRestore();
    }
  });

  it("exits 1 on usage problems", () => {
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    try {
      expect(main([])).toBe(1);
      expect(main(["mystery", "--in", EULER, "--out", tmpPath("x.svg")])).toBe(1);
      expect(main(["drift", "--in", EULER])).toBe(1);
      expect(main(["drift", "--out", tmpPath("x.svg")])).toBe(1);
      expect(main(["drift", "--in", EULER, "--out", tmpPath("x.svg"), "--labels", "a", "--labels", "b"])).toBe(1);
      expect(main(["drift", "--in", EULER, "--out", tmpPath("x.svg"), "--bogus"])).toBe(1);
      expect(main(["convergence", "--in", CONV, "--out", tmpPath("x.svg"), "--column", "energy"])).toBe(1);
      expect(err).toHaveBeenCalled();
    } finally {
      err.mockRestore();
    }
  });

  it("exits 2 on bad input data and names the offending file", () => {
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    try {
      expect(main(["drift", "--in", "/nope/missing.csv", "--out", tmpPath("x.svg")])).toBe(2);

      const single = tmpPath("single.csv");
      writeFileSync(single, "h,global_err,observed_order\n0.1,1e-5,\n");
      expect(main(["convergence", "--in", single, "--out", single.replace(".csv", ".svg")])).toBe(2);
      const messages = err.mock.calls.map((c) => String(c[0]));
      expect(messages.some((m) => m.includes("single.csv"))).toBe(true);
    } finally {
      err.mockRestore();
    }
  });
});
