/**
 * SVG renderer for layout scenes.  Output is deterministic: fixed attribute
 * order, coordinates rounded to 1/100 px, no timestamps or generated ids.
 */

import type { Primitive, Scene } from "./layout.js";

function n(v: number): string {
  return String(Math.round(v * 100) / 100);
}

function escapeText(s: string): string {
  return s
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;");
}

function render(p: Primitive): string {
  switch (p.kind) {
    case "rect": {
      const fill = p.fill ? ` fill="${p.fill}"` : ' fill="none"';
      const stroke = p.stroke ? ` stroke="${p.stroke}"` : "";
      return `<rect x="${n(p.x)}" y="${n(p.y)}" width="${n(p.w)}" height="${n(p.h)}"${fill}${stroke}/>`;
    }
    case "line": {
      const dash = p.dash ? ` stroke-dasharray="${p.dash.join(",")}"` : "";
      return (
        `<line x1="${n(p.x1)}" y1="${n(p.y1)}" x2="${n(p.x2)}" y2="${n(p.y2)}"` +
        ` stroke="${p.color}" stroke-width="${n(p.width)}"${dash}/>`
      );
    }
    case "polyline": {
      const dash = p.dash ? ` stroke-dasharray="${p.dash.join(",")}"` : "";
      const pts = p.points.map(([x, y]) => `${n(x)},${n(y)}`).join(" ");
      return (
        `<polyline points="${pts}" fill="none" stroke="${p.color}"` +
        ` stroke-width="${n(p.width)}"${dash}/>`
      );
    }
    case "text": {
      const anchor =
        p.anchor === "start" ? "" : ` text-anchor="${p.anchor}"`;
      return (
        `<text x="${n(p.x)}" y="${n(p.y)}" font-size="${n(p.size)}"` +
        ` font-family="Helvetica, Arial, sans-serif" fill="${p.color}"${anchor}>` +
        `${escapeText(p.text)}</text>`
      );
    }
  }
}

export function renderSvg(scene: Scene): string {
  const body = scene.primitives.map(render).join("\n  ");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}"` +
    ` height="${scene.height}" viewBox="0 0 ${scene.width} ${scene.height}">\n` +
    `  ${body}\n</svg>\n`
  );
}
