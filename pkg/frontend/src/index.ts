import { readFileSync, writeFileSync } from "node:fs";

import { FigureSpec, Family, Quantity, ValidationError, buildScene } from "./chart.js";
import { SchemaError, SweepRow, parseSweepCsv } from "./csv.js";
import { sceneToSvg } from "./svg.js";

export { buildScene, parseSweepCsv, sceneToSvg, SchemaError, ValidationError };
export type { FigureSpec, Family, Quantity, SweepRow };

export interface RenderOptions {
  family: Family;
  inputPaths: string[];
  outPath: string;
  quantity?: Quantity;
  title?: string;
}

/** Read the input CSVs, build the family scene, and write the SVG. */
export function render(options: RenderOptions): void {
  if (!options.outPath.endsWith(".svg")) {
    throw new ValidationError(`output must be an .svg path, got "${options.outPath}"`);
  }
  const inputs = options.inputPaths.map((p) => parseSweepCsv(readFileSync(p, "utf-8")));
  const scene = buildScene({
    family: options.family,
    inputs,
    quantity: options.quantity,
    title: options.title,
  });
  writeFileSync(options.outPath, sceneToSvg(scene), "utf-8");
}
