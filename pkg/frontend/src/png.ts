/**
 * PNG renderer for layout scenes: a small software rasterizer (2x
 * supersampled coordinates, uppercase 5x7 bitmap labels) plus a minimal PNG
 * encoder on node's zlib.  No native imaging dependencies, byte-for-byte
 * deterministic output.
 */

import { deflateSync } from "zlib";

import type { Primitive, Scene } from "./layout.js";

const SCALE = 2;

// -- 5x7 uppercase bitmap font ----------------------------------------------

const GLYPHS: Record<string, string[]> = {
  A: [".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"],
  B: ["####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."],
  C: [".###.", "#...#", "#....", "#....", "#....", "#...#", ".###."],
  D: ["####.", "#...#", "#...#", "#...#", "#...#", "#...#", "####."],
  E: ["#####", "#....", "#....", "####.", "#....", "#....", "#####"],
  F: ["#####", "#....", "#....", "####.", "#....", "#....", "#...."],
  G: [".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".####"],
  H: ["#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"],
  I: [".###.", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."],
  J: ["..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."],
  K: ["#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"],
  L: ["#....", "#....", "#....", "#....", "#....", "#....", "#####"],
  M: ["#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"],
  N: ["#...#", "##..#", "#.#.#", "#..##", "#...#", "#...#", "#...#"],
  O: [".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."],
  P: ["####.", "#...#", "#...#", "####.", "#....", "#....", "#...."],
  Q: [".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"],
  R: ["####.", "#...#", "#...#", "####.", "#.#..", "#..#.", "#...#"],
  S: [".####", "#....", "#....", ".###.", "....#", "....#", "####."],
  T: ["#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."],
  U: ["#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."],
  V: ["#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."],
  W: ["#...#", "#...#", "#...#", "#.#.#", "#.#.#", "##.##", "#...#"],
  X: ["#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"],
  Y: ["#...#", "#...#", ".#.#.", "..#..", "..#..", "..#..", "..#.."],
  Z: ["#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"],
  "0": [".###.", "#...#", "#..##", "#.#.#", "##..#", "#...#", ".###."],
  "1": ["..#..", ".##..", "..#..", "..#..", "..#..", "..#..", ".###."],
  "2": [".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"],
  "3": [".###.", "#...#", "....#", "..##.", "....#", "#...#", ".###."],
  "4": ["...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."],
  "5": ["#####", "#....", "####.", "....#", "....#", "#...#", ".###."],
  "6": [".###.", "#....", "#....", "####.", "#...#", "#...#", ".###."],
  "7": ["#####", "....#", "...#.", "..#..", "..#..", "..#..", "..#.."],
  "8": [".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."],
  "9": [".###.", "#...#", "#...#", ".####", "....#", "....#", ".###."],
  " ": [".....", ".....", ".....", ".....", ".....", ".....", "....."],
  "+": [".....", "..#..", "..#..", "#####", "..#..", "..#..", "....."],
  "-": [".....", ".....", ".....", "#####", ".....", ".....", "....."],
  ".": [".....", ".....", ".....", ".....", ".....", ".##..", ".##.."],
  ",": [".....", ".....", ".....", ".....", "..#..", "..#..", ".#..."],
  "(": ["...#.", "..#..", ".#...", ".#...", ".#...", "..#..", "...#."],
  ")": [".#...", "..#..", "...#.", "...#.", "...#.", "..#..", ".#..."],
  "/": ["....#", "....#", "...#.", "..#..", ".#...", "#....", "#...."],
  _: [".....", ".....", ".....", ".....", ".....", ".....", "#####"],
  ":": [".....", ".##..", ".##..", ".....", ".##..", ".##..", "....."],
  "=": [".....", ".....", "#####", ".....", "#####", ".....", "....."],
  "?": [".###.", "#...#", "....#", "...#.", "..#..", ".....", "..#.."],
};

// -- raster canvas ------------------------------------------------------------

class Canvas {
  readonly data: Uint8ClampedArray;

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.data = new Uint8ClampedArray(width * height * 3).fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) {
      return;
    }
    const o = (yi * this.width + xi) * 3;
    this.data[o] = rgb[0];
    this.data[o + 1] = rgb[1];
    this.data[o + 2] = rgb[2];
  }

  /** Bresenham segment with square pen of the given half width. */
  line(
    x1: number,
    y1: number,
    x2: number,
    y2: number,
    rgb: [number, number, number],
    pen: number,
  ): void {
    let x = Math.round(x1);
    let y = Math.round(y1);
    const xe = Math.round(x2);
    const ye = Math.round(y2);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sxx = x < xe ? 1 : -1;
    const syy = y < ye ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      for (let px = -pen; px <= pen; px++) {
        for (let py = -pen; py <= pen; py++) {
          this.set(x + px, y + py, rgb);
        }
      }
      if (x === xe && y === ye) {
        break;
      }
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sxx;
      }
      if (e2 <= dx) {
        err += dx;
        y += syy;
      }
    }
  }
}

function parseColor(hex: string): [number, number, number] {
  const h = hex.replace("#", "");
  return [
    parseInt(h.slice(0, 2), 16),
    parseInt(h.slice(2, 4), 16),
    parseInt(h.slice(4, 6), 16),
  ];
}

function dashedSegments(
  points: Array<[number, number]>,
  dash: number[],
): Array<[[number, number], [number, number]]> {
  const out: Array<[[number, number], [number, number]]> = [];
  const period = dash.reduce((a, b) => a + b, 0);
  let offset = 0;
  for (let i = 1; i < points.length; i++) {
    let [x0, y0] = points[i - 1];
    const [x1, y1] = points[i];
    let segLen = Math.hypot(x1 - x0, y1 - y0);
    while (segLen > 1e-9) {
      const phase = offset % period;
      const on = phase < dash[0];
      const remain = on ? dash[0] - phase : period - phase;
      const step = Math.min(remain, segLen);
      const f = step / segLen;
      const xm = x0 + (x1 - x0) * f;
      const ym = y0 + (y1 - y0) * f;
      if (on) {
        out.push([
          [x0, y0],
          [xm, ym],
        ]);
      }
      x0 = xm;
      y0 = ym;
      segLen -= step;
      offset += step;
    }
  }
  return out;
}

function drawText(
  canvas: Canvas,
  p: Extract<Primitive, { kind: "text" }>,
): void {
  const text = p.text.toUpperCase();
  const px = Math.max(1, Math.round((p.size * SCALE) / 8));
  const advance = 6 * px;
  const widthPx = text.length * advance - px;
  let x0 = p.x * SCALE;
  if (p.anchor === "middle") {
    x0 -= widthPx / 2;
  } else if (p.anchor === "end") {
    x0 -= widthPx;
  }
  const y0 = p.y * SCALE - 7 * px; // baseline at p.y
  const rgb = parseColor(p.color);
  for (let ci = 0; ci < text.length; ci++) {
    const glyph = GLYPHS[text[ci]] ?? GLYPHS["?"];
    for (let gy = 0; gy < 7; gy++) {
      for (let gx = 0; gx < 5; gx++) {
        if (glyph[gy][gx] === "#") {
          for (let sy = 0; sy < px; sy++) {
            for (let sx = 0; sx < px; sx++) {
              canvas.set(
                x0 + ci * advance + gx * px + sx,
                y0 + gy * px + sy,
                rgb,
              );
            }
          }
        }
      }
    }
  }
}

function draw(canvas: Canvas, p: Primitive): void {
  switch (p.kind) {
    case "rect": {
      const x = p.x * SCALE;
      const y = p.y * SCALE;
      const w = p.w * SCALE;
      const h = p.h * SCALE;
      if (p.fill) {
        const rgb = parseColor(p.fill);
        for (let yy = Math.round(y); yy < Math.round(y + h); yy++) {
          for (let xx = Math.round(x); xx < Math.round(x + w); xx++) {
            canvas.set(xx, yy, rgb);
          }
        }
      }
      if (p.stroke) {
        const rgb = parseColor(p.stroke);
        canvas.line(x, y, x + w, y, rgb, 0);
        canvas.line(x + w, y, x + w, y + h, rgb, 0);
        canvas.line(x + w, y + h, x, y + h, rgb, 0);
        canvas.line(x, y + h, x, y, rgb, 0);
      }
      break;
    }
    case "line":
    case "polyline": {
      const pts: Array<[number, number]> =
        p.kind === "line"
          ? [
              [p.x1, p.y1],
              [p.x2, p.y2],
            ]
          : p.points;
      const scaled = pts.map(
        ([x, y]) => [x * SCALE, y * SCALE] as [number, number],
      );
      const rgb = parseColor(p.color);
      const pen = p.width > 1.2 ? 1 : 0;
      if (p.dash) {
        const dashScaled = p.dash.map((d) => d * SCALE);
        for (const [[x0, y0], [x1, y1]] of dashedSegments(scaled, dashScaled)) {
          canvas.line(x0, y0, x1, y1, rgb, pen);
        }
      } else {
        for (let i = 1; i < scaled.length; i++) {
          canvas.line(
            scaled[i - 1][0],
            scaled[i - 1][1],
            scaled[i][0],
            scaled[i][1],
            rgb,
            pen,
          );
        }
      }
      break;
    }
    case "text":
      drawText(canvas, p);
      break;
  }
}

// -- PNG encoding --------------------------------------------------------------

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let i = 0; i < 256; i++) {
    let c = i;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[i] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (const b of buf) {
    c = CRC_TABLE[(c ^ b) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Uint8Array): Buffer {
  const head = Buffer.alloc(8);
  head.writeUInt32BE(data.length, 0);
  head.write(type, 4, "ascii");
  const body = Buffer.concat([head.subarray(4), data]);
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([head.subarray(0, 4), body, crc]);
}

function encodePng(canvas: Canvas): Buffer {
  const { width, height, data } = canvas;
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 2; // truecolor
  const raw = Buffer.alloc(height * (1 + width * 3));
  for (let y = 0; y < height; y++) {
    const rowStart = y * (1 + width * 3);
    raw[rowStart] = 0; // filter: none
    data
      .subarray(y * width * 3, (y + 1) * width * 3)
      .forEach((v, i) => (raw[rowStart + 1 + i] = v));
  }
  const idat = deflateSync(raw, { level: 9 });
  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", idat),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function renderPng(scene: Scene): Buffer {
  const canvas = new Canvas(scene.width * SCALE, scene.height * SCALE);
  for (const p of scene.primitives) {
    draw(canvas, p);
  }
  return encodePng(canvas);
}
