/**
 * Figure families built from parsed sweep rows.
 *
 * fig1: one panel, one solid curve per input CSV (separation family), with
 *       the factorized baselines of the first input drawn dashed.
 * fig4: two panels (contextual fraction, negativity), one curve per
 *       dynamics, from a single paired-dynamics CSV.
 * fig5: like fig4 but for a fixed R*Omega sweep of one dynamics.
 *
 * Everything is normalized by the squared coupling, matching how the curves
 * are reported.
 */

import { SweepRow } from "./csv.js";
import {
  Polyline,
  RectItem,
  Scene,
  SceneItem,
  Scale,
  TextItem,
  extend,
  formatTick,
  linearScale,
  ticks,
} from "./scene.js";

export class ValidationError extends Error {}

export type Family = "fig1" | "fig4" | "fig5";
export type Quantity = "cf" | "negativity";

export interface FigureSpec {
  family: Family;
  inputs: SweepRow[][];
  quantity?: Quantity; // fig1 only; the others render both panels
  title?: string;
}

// fixed style sheet so renders are reproducible byte for byte
export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
export const BASELINE_COLORS = ["#555555", "#999999"];
const FONT = 12;
const AXIS_COLOR = "#000000";

interface Series {
  label: string;
  points: Array<[number, number]>;
  color: string;
  dash?: number[];
}

function value(row: SweepRow, quantity: Quantity): number | null {
  return quantity === "cf" ? row.cfJoint : row.negativity;
}

function seriesFromRows(
  rows: SweepRow[],
  pick: (r: SweepRow) => number | null,
  label: string,
  color: string,
  dash?: number[],
): Series {
  const points: Array<[number, number]> = [];
  for (const row of rows) {
    if (row.error !== "") continue;
    const y = pick(row);
    if (y === null) continue;
    points.push([row.axisValue, y / (row.lam * row.lam)]);
  }
  if (points.length === 0) throw new ValidationError(`no plottable points for "${label}"`);
  return { label, points, color, dash };
}

function panel(
  series: Series[],
  box: { x: number; y: number; w: number; h: number },
  xLabel: string,
  yLabel: string,
  title: string,
): SceneItem[] {
  let xDom: [number, number] | null = null;
  let yDom: [number, number] | null = null;
  for (const s of series) {
    for (const [x, y] of s.points) {
      xDom = extend(xDom, x);
      yDom = extend(yDom, y);
    }
  }
  if (xDom === null || yDom === null) throw new ValidationError("nothing to plot");
  yDom = extend(yDom, 0);
  if (yDom[1] === yDom[0]) yDom = [yDom[0], yDom[0] + 1];

  const inner = { x: box.x + 62, y: box.y + 28, w: box.w - 78, h: box.h - 72 };
  const sx = linearScale(xDom, [inner.x, inner.x + inner.w]);
  const sy = linearScale(yDom, [inner.y + inner.h, inner.y]);

  const items: SceneItem[] = [];
  items.push({
    kind: "rect", x: inner.x, y: inner.y, w: inner.w, h: inner.h,
    fill: "none", stroke: AXIS_COLOR,
  } as RectItem);

  for (const t of ticks(xDom)) {
    const px = sx.map(t);
    items.push(line([[px, inner.y + inner.h], [px, inner.y + inner.h + 5]], AXIS_COLOR, 1));
    items.push(text(px, inner.y + inner.h + 18, formatTick(t), "middle"));
  }
  for (const t of ticks(yDom)) {
    const py = sy.map(t);
    items.push(line([[inner.x - 5, py], [inner.x, py]], AXIS_COLOR, 1));
    items.push(text(inner.x - 8, py + 4, formatTick(t), "end"));
  }
  items.push(text(inner.x + inner.w / 2, box.y + box.h - 14, xLabel, "middle"));
  items.push({
    kind: "text", x: box.x + 16, y: inner.y + inner.h / 2, text: yLabel,
    size: FONT, anchor: "middle", color: AXIS_COLOR, rotate: -90,
  } as TextItem);
  items.push(text(inner.x + inner.w / 2, box.y + 16, title, "middle"));

  for (const s of series) {
    items.push({
      kind: "polyline",
      points: s.points.map(([x, y]) => [sx.map(x), sy.map(y)] as [number, number]),
      color: s.color,
      width: 1.5,
      dash: s.dash,
    } as Polyline);
  }

  // legend, top-right inside the frame
  let ly = inner.y + 14;
  for (const s of series) {
    const lx = inner.x + inner.w - 150;
    items.push(line([[lx, ly - 4], [lx + 24, ly - 4]], s.color, 1.5, s.dash));
    items.push(text(lx + 30, ly, s.label, "start"));
    ly += 16;
  }
  return items;
}

function line(points: Array<[number, number]>, color: string, width: number,
              dash?: number[]): Polyline {
  return { kind: "polyline", points, color, width, dash };
}

function text(x: number, y: number, value: string, anchor: "start" | "middle" | "end"): TextItem {
  return { kind: "text", x, y, text: value, size: FONT, anchor, color: AXIS_COLOR };
}

function xAxisLabel(rows: SweepRow[]): string {
  return rows[0].parametrization === "fixed_ROmega" ? "Omega T (fixed R Omega)" : "Omega T";
}

function buildFig1(spec: FigureSpec): Scene {
  const quantity = spec.quantity ?? "cf";
  const yLabel = quantity === "cf" ? "CF / lambda^2" : "negativity / lambda^2";
  const series: Series[] = [];
  spec.inputs.forEach((rows, i) => {
    series.push(seriesFromRows(
      rows, (r) => value(r, quantity),
      `d/T = ${rows[0].dtilde.toFixed(2)}`, PALETTE[i % PALETTE.length]));
  });
  if (quantity === "cf") {
    const first = spec.inputs[0];
    if (first.some((r) => r.cfReducedTensorReduced !== null)) {
      series.push(seriesFromRows(first, (r) => r.cfReducedTensorReduced,
                                 "product baseline", BASELINE_COLORS[0], [6, 4]));
    }
    if (first.some((r) => r.cfReducedTensorGround !== null)) {
      series.push(seriesFromRows(first, (r) => r.cfReducedTensorGround,
                                 "single-coupled baseline", BASELINE_COLORS[1], [2, 3]));
    }
  }
  const scene: Scene = { width: 640, height: 420, items: [] };
  scene.items.push({ kind: "rect", x: 0, y: 0, w: 640, h: 420, fill: "#ffffff" } as RectItem);
  scene.items.push(...panel(series, { x: 0, y: 0, w: 640, h: 420 },
                            xAxisLabel(spec.inputs[0]), yLabel,
                            spec.title ?? "harvested contextual fraction"));
  return scene;
}

function twoPanelScene(
  inputs: SweepRow[],
  splitBy: (r: SweepRow) => string,
  spec: FigureSpec,
): Scene {
  const groups = new Map<string, SweepRow[]>();
  for (const row of inputs) {
    const key = splitBy(row);
    if (!groups.has(key)) groups.set(key, []);
    groups.get(key)!.push(row);
  }
  const labels = [...groups.keys()].sort();
  const scene: Scene = { width: 980, height: 420, items: [] };
  scene.items.push({ kind: "rect", x: 0, y: 0, w: 980, h: 420, fill: "#ffffff" } as RectItem);
  const panels: Array<[Quantity, string, string]> = [
    ["cf", "CF / lambda^2", "contextual fraction"],
    ["negativity", "negativity / lambda^2", "Wigner negativity"],
  ];
  panels.forEach(([quantity, yLabel, title], p) => {
    const series = labels.map((label, i) => seriesFromRows(
      groups.get(label)!, (r) => value(r, quantity), label, PALETTE[i % PALETTE.length]));
    scene.items.push(...panel(series, { x: p * 490, y: 0, w: 490, h: 420 },
                              xAxisLabel(inputs), yLabel, title));
  });
  if (spec.title) {
    scene.items.push(text(490, 14, spec.title, "middle"));
  }
  return scene;
}

function buildFig4(spec: FigureSpec): Scene {
  const rows = spec.inputs.flat();
  const dynamics = new Set(rows.map((r) => r.dynamics));
  if (!dynamics.has("SU2") || !dynamics.has("HW")) {
    throw new ValidationError(
      `fig4 needs both dynamics; found [${[...dynamics].sort().join(", ")}]`);
  }
  return twoPanelScene(rows, (r) => r.dynamics, spec);
}

function buildFig5(spec: FigureSpec): Scene {
  const rows = spec.inputs.flat();
  if (rows.some((r) => r.parametrization !== "fixed_ROmega")) {
    throw new ValidationError("fig5 expects a fixed_ROmega sweep");
  }
  return twoPanelScene(rows, (r) => r.dynamics, spec);
}

export function buildScene(spec: FigureSpec): Scene {
  if (spec.inputs.length === 0) throw new ValidationError("no input CSVs");
  switch (spec.family) {
    case "fig1":
      return buildFig1(spec);
    case "fig4":
      return buildFig4(spec);
    case "fig5":
      return buildFig5(spec);
    default:
      throw new ValidationError(`unknown figure family "${spec.family}"`);
  }
}
