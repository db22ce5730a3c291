import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { PALETTE, ValidationError, buildScene } from "../src/chart.js";
import { parseSweepCsv } from "../src/csv.js";
import { Polyline, TextItem } from "../src/scene.js";

const FIXTURES = join(__dirname, "fixtures");
const load = (name: string) => parseSweepCsv(readFileSync(join(FIXTURES, name), "utf-8"));

const fig1Inputs = ["fig1_d0.csv", "fig1_d1.csv", "fig1_d2.csv", "fig1_d3.csv"].map(load);

describe("fig1", () => {
  it("draws four solid curves plus two dashed baselines", () => {
    const scene = buildScene({ family: "fig1", inputs: fig1Inputs });
    const curves = scene.items.filter(
      (i): i is Polyline => i.kind === "polyline" && i.points.length > 2,
    );
    const solid = curves.filter((c) => !c.dash);
    const dashed = curves.filter((c) => c.dash);
    expect(solid).toHaveLength(4);
    expect(dashed).toHaveLength(2);
    expect(new Set(solid.map((c) => c.color)).size).toBe(4);
    expect(solid[0].color).toBe(PALETTE[0]);
  });

  it("normalizes by the squared coupling", () => {
    const scene = buildScene({ family: "fig1", inputs: [fig1Inputs[0]] });
    const labels = scene.items
      .filter((i): i is TextItem => i.kind === "text")
      .map((i) => i.text);
    expect(labels).toContain("CF / lambda^2");
    // the tick range must reflect cf/lambda^2 of order one, not cf itself
    const nums = labels.map(Number).filter((x) => Number.isFinite(x));
    expect(Math.max(...nums)).toBeGreaterThan(0.5);
    expect(Math.max(...nums)).toBeLessThan(100);
  });

  it("renders negativity without baselines when asked", () => {
    const scene = buildScene({ family: "fig1", inputs: fig1Inputs, quantity: "negativity" });
    const curves = scene.items.filter(
      (i): i is Polyline => i.kind === "polyline" && i.points.length > 2,
    );
    expect(curves.filter((c) => c.dash)).toHaveLength(0);
    expect(curves).toHaveLength(4);
  });
});

describe("fig4", () => {
  it("builds two panels with one curve per dynamics", () => {
    const scene = buildScene({ family: "fig4", inputs: [load("fig4.csv")] });
    const curves = scene.items.filter(
      (i): i is Polyline => i.kind === "polyline" && i.points.length > 2,
    );
    expect(curves).toHaveLength(4); // {cf, negativity} x {HW, SU2}
    const titles = scene.items
      .filter((i): i is TextItem => i.kind === "text")
      .map((i) => i.text);
    expect(titles).toContain("contextual fraction");
    expect(titles).toContain("Wigner negativity");
    expect(titles).toContain("SU2");
    expect(titles).toContain("HW");
  });

  it("rejects a single-dynamics input", () => {
    expect(() => buildScene({ family: "fig4", inputs: [fig1Inputs[0]] }))
      .toThrow(ValidationError);
    expect(() => buildScene({ family: "fig4", inputs: [fig1Inputs[0]] }))
      .toThrow(/both dynamics/);
  });
});

describe("fig5", () => {
  it("accepts only fixed R*Omega sweeps", () => {
    const scene = buildScene({ family: "fig5", inputs: [load("fig5.csv")] });
    const labels = scene.items
      .filter((i): i is TextItem => i.kind === "text")
      .map((i) => i.text);
    expect(labels).toContain("Omega T (fixed R Omega)");
    expect(() => buildScene({ family: "fig5", inputs: [fig1Inputs[0]] }))
      .toThrow(/fixed_ROmega/);
  });
});

describe("scene determinism", () => {
  it("is a pure function of the rows", () => {
    const a = buildScene({ family: "fig1", inputs: fig1Inputs });
    const b = buildScene({ family: "fig1", inputs: fig1Inputs });
    expect(a).toEqual(b);
  });
});
