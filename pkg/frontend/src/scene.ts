/**
 * Minimal figure scene model: everything a rendered panel contains, as plain
 * data. Keeping the scene explicit makes the SVG writer trivially
 * deterministic and the layout unit-testable without parsing markup.
 */

export interface Polyline {
  kind: "polyline";
  points: Array<[number, number]>;
  color: string;
  width: number;
  dash?: number[];
}

export interface TextItem {
  kind: "text";
  x: number;
  y: number;
  text: string;
  size: number;
  anchor: "start" | "middle" | "end";
  color: string;
  rotate?: number;
}

export interface RectItem {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  fill: string;
  stroke?: string;
}

export type SceneItem = Polyline | TextItem | RectItem;

export interface Scene {
  width: number;
  height: number;
  items: SceneItem[];
}

/** Linear scale from a data domain onto a pixel range. */
export interface Scale {
  domain: [number, number];
  range: [number, number];
  map(x: number): number;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  return {
    domain,
    range,
    map: (x: number) => r0 + ((x - d0) / span) * (r1 - r0),
  };
}

/** Tick positions at a 1/2/5 step covering the domain with about n ticks. */
export function ticks(domain: [number, number], n = 5): number[] {
  const [lo, hi] = domain;
  const span = hi - lo;
  if (span <= 0) return [lo];
  const rough = span / Math.max(1, n);
  const pow = Math.pow(10, Math.floor(Math.log10(rough)));
  let step = pow;
  for (const mult of [1, 2, 5, 10]) {
    if (pow * mult >= rough) {
      step = pow * mult;
      break;
    }
  }
  const first = Math.ceil(lo / step - 1e-9) * step;
  const out: number[] = [];
  for (let t = first; t <= hi + 1e-9 * span; t += step) {
    out.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  return out;
}

export function formatTick(x: number): string {
  if (x === 0) return "0";
  const a = Math.abs(x);
  if (a >= 1e4 || a < 1e-3) return x.toExponential(1).replace("+", "");
  const text = x.toPrecision(4);
  return text.includes(".") ? text.replace(/\.?0+$/, "") : text;
}

/** Extend a domain to include a value (for accumulating data extents). */
export function extend(domain: [number, number] | null, x: number): [number, number] {
  if (domain === null) return [x, x];
  return [Math.min(domain[0], x), Math.max(domain[1], x)];
}
