import { describe, expect, it } from "vitest";

import { esc, fmtNum, niceTicks, renderChart } from "../src/svg.js";

describe("helpers", () => {
  it("escapes markup characters", () => {
    expect(esc("a<b & c>d")).toBe("a&lt;b &amp; c&gt;d");
  });

  it("produces round tick values", () => {
    expect(niceTicks(0, 10, 5)).toEqual([0, 2, 4, 6, 8, 10]);
    expect(niceTicks(0, 1, 5)).toEqual([0, 0.2, 0.4, 0.6000000000000001, 0.8, 1].map((v) => expect.closeTo(v, 12)));
  });

  it("formats tick labels compactly", () => {
    expect(fmtNum(0)).toBe("0");
    expect(fmtNum(0.25)).toBe("0.25");
    expect(fmtNum(1e-12)).toBe("1e-12");
    expect(fmtNum(2000000)).toBe("2e6");
  });
});

describe("renderChart", () => {
  const line = { label: "a<b", x: [0, 1, 2], y: [1, 2, 3] };

  it("emits a complete svg document with escaped labels", () => {
    const svg = renderChart({ title: "t", xLabel: "x", yLabel: "y", series: [line] });
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
    expect(svg).toContain("a&lt;b");
    expect(svg).not.toContain("a<b");
  });

  it("splits polylines at nonpositive values on a log axis", () => {
    const svg = renderChart({
      title: "t",
      xLabel: "x",
      yLabel: "y",
      yLog: true,
      series: [{ label: "s", x: [0, 1, 2, 3, 4], y: [1, 2, 0, 4, 5] }],
    });
    const polylines = svg.match(/<polyline /g) ?? [];
    expect(polylines).toHaveLength(2);
  });

  it("draws markers only at plottable points", () => {
    const svg = renderChart({
      title: "t",
      xLabel: "x",
      yLabel: "y",
      yLog: true,
      series: [{ label: "s", x: [1, 2, 3], y: [1, NaN, 3], markers: true }],
    });
    const circles = svg.match(/<circle /g) ?? [];
    expect(circles).toHaveLength(2);
  });

  it("rejects a series with nothing plottable", () => {
    expect(() =>
      renderChart({
        title: "t",
        xLabel: "x",
        yLabel: "y",
        yLog: true,
        series: [{ label: "s", x: [1, 2], y: [0, -1] }],
      }),
    ).toThrow(/nothing to plot/);
  });

  it("lists guides in the legend with their dash pattern", () => {
    const svg = renderChart({
      title: "t",
      xLabel: "x",
      yLabel: "y",
      series: [line],
      guides: [{ label: "slope 2", x: [0, 2], y: [1, 3], dash: "8,4" }],
    });
    expect(svg).toContain("slope 2");
    expect(svg).toContain('stroke-dasharray="8,4"');
  });
});
