/**
 * Scene to SVG. Coordinates are rounded to two decimals and attributes are
 * emitted in a fixed order, so identical scenes give identical bytes.
 */

import { Scene, SceneItem } from "./scene.js";

const XML = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

function fmt(x: number): string {
  const r = x.toFixed(2);
  return r === "-0.00" ? "0.00" : r;
}

function renderItem(item: SceneItem): string {
  switch (item.kind) {
    case "rect": {
      const stroke = item.stroke
        ? ` stroke="${item.stroke}" stroke-width="1"`
        : "";
      return `<rect x="${fmt(item.x)}" y="${fmt(item.y)}" width="${fmt(item.w)}" height="${fmt(item.h)}" fill="${item.fill}"${stroke}/>`;
    }
    case "polyline": {
      const pts = item.points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
      const dash = item.dash ? ` stroke-dasharray="${item.dash.join(",")}"` : "";
      return `<polyline points="${pts}" fill="none" stroke="${item.color}" stroke-width="${item.width}"${dash}/>`;
    }
    case "text": {
      const rotate = item.rotate
        ? ` transform="rotate(${item.rotate} ${fmt(item.x)} ${fmt(item.y)})"`
        : "";
      return `<text x="${fmt(item.x)}" y="${fmt(item.y)}" font-family="Helvetica,Arial,sans-serif" font-size="${item.size}" text-anchor="${item.anchor}" fill="${item.color}"${rotate}>${XML(item.text)}</text>`;
    }
  }
}

export function sceneToSvg(scene: Scene): string {
  const body = scene.items.map(renderItem).join("\n  ");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" height="${scene.height}" viewBox="0 0 ${scene.width} ${scene.height}">\n  ` +
    body +
    "\n</svg>\n"
  );
}
