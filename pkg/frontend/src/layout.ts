/**
 * Converts figure models into a flat list of drawing primitives shared by
 * the SVG and PNG renderers, so both formats show the same geometry, ticks
 * and labels.
 */

import type { Figure, Panel, Series } from "./figure.js";

export type Primitive =
  | {
      kind: "rect";
      x: number;
      y: number;
      w: number;
      h: number;
      fill?: string;
      stroke?: string;
    }
  | {
      kind: "polyline";
      points: Array<[number, number]>;
      color: string;
      width: number;
      dash?: number[];
    }
  | {
      kind: "line";
      x1: number;
      y1: number;
      x2: number;
      y2: number;
      color: string;
      width: number;
      dash?: number[];
    }
  | {
      kind: "text";
      x: number;
      y: number;
      text: string;
      size: number;
      color: string;
      anchor: "start" | "middle" | "end";
    };

export interface Scene {
  width: number;
  height: number;
  primitives: Primitive[];
}

const MARGIN = { left: 64, right: 16, top: 30, bottom: 42 };
const AXIS_COLOR = "#333333";
const GRID_COLOR = "#dddddd";

/** Tick positions at a 1/2/5 decade spacing covering [lo, hi]. */
export function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  const span = hi - lo;
  const raw = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  const firstIndex = Math.ceil(lo / step - 1e-9);
  const ticks: number[] = [];
  for (let i = firstIndex; i * step <= hi + step * 1e-9; i++) {
    const v = parseFloat((i * step).toPrecision(12));
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function formatTick(v: number): string {
  if (v === 0) {
    return "0";
  }
  const a = Math.abs(v);
  if (a >= 1000 || a < 0.001) {
    return v.toExponential(1);
  }
  return String(parseFloat(v.toPrecision(6)));
}

function seriesExtent(series: Series[], pick: (s: Series) => number[]) {
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of series) {
    for (const v of pick(s)) {
      if (Number.isFinite(v)) {
        lo = Math.min(lo, v);
        hi = Math.max(hi, v);
      }
    }
  }
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  return [lo, hi] as const;
}

function layoutPanel(
  panel: Panel,
  x0: number,
  y0: number,
  width: number,
  height: number,
  out: Primitive[],
): void {
  const plotX = x0 + MARGIN.left;
  const plotY = y0 + MARGIN.top;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const [xLo, xHi] = seriesExtent(panel.series, (s) => s.x);
  let [yLo, yHi] = seriesExtent(panel.series, (s) => s.y);
  const pad = 0.05 * (yHi - yLo || 1);
  yLo -= pad;
  yHi += pad;
  if (panel.yMin !== undefined) {
    yLo = panel.yMin;
  }
  if (panel.yMax !== undefined) {
    yHi = panel.yMax;
  }

  const sx = (v: number) => plotX + ((v - xLo) / (xHi - xLo)) * plotW;
  const sy = (v: number) => plotY + plotH - ((v - yLo) / (yHi - yLo)) * plotH;

  out.push({
    kind: "rect",
    x: plotX,
    y: plotY,
    w: plotW,
    h: plotH,
    stroke: AXIS_COLOR,
  });
  out.push({
    kind: "text",
    x: plotX + plotW / 2,
    y: y0 + 18,
    text: panel.title,
    size: 14,
    color: AXIS_COLOR,
    anchor: "middle",
  });

  for (const tv of niceTicks(xLo, xHi)) {
    const tx = sx(tv);
    out.push({
      kind: "line",
      x1: tx,
      y1: plotY,
      x2: tx,
      y2: plotY + plotH,
      color: GRID_COLOR,
      width: 1,
    });
    out.push({
      kind: "line",
      x1: tx,
      y1: plotY + plotH,
      x2: tx,
      y2: plotY + plotH + 4,
      color: AXIS_COLOR,
      width: 1,
    });
    out.push({
      kind: "text",
      x: tx,
      y: plotY + plotH + 18,
      text: formatTick(tv),
      size: 11,
      color: AXIS_COLOR,
      anchor: "middle",
    });
  }
  for (const tv of niceTicks(yLo, yHi)) {
    const ty = sy(tv);
    out.push({
      kind: "line",
      x1: plotX,
      y1: ty,
      x2: plotX + plotW,
      y2: ty,
      color: GRID_COLOR,
      width: 1,
    });
    out.push({
      kind: "line",
      x1: plotX - 4,
      y1: ty,
      x2: plotX,
      y2: ty,
      color: AXIS_COLOR,
      width: 1,
    });
    out.push({
      kind: "text",
      x: plotX - 8,
      y: ty + 4,
      text: formatTick(tv),
      size: 11,
      color: AXIS_COLOR,
      anchor: "end",
    });
  }
  out.push({
    kind: "text",
    x: plotX + plotW / 2,
    y: plotY + plotH + 34,
    text: panel.xLabel,
    size: 12,
    color: AXIS_COLOR,
    anchor: "middle",
  });
  out.push({
    kind: "text",
    x: x0 + 14,
    y: plotY + 12,
    text: panel.yLabel,
    size: 12,
    color: AXIS_COLOR,
    anchor: "start",
  });

  for (const s of panel.series) {
    const points: Array<[number, number]> = [];
    for (let i = 0; i < s.x.length; i++) {
      if (Number.isFinite(s.x[i]) && Number.isFinite(s.y[i])) {
        const yClamped = Math.min(Math.max(s.y[i], yLo), yHi);
        points.push([sx(s.x[i]), sy(yClamped)]);
      }
    }
    out.push({
      kind: "polyline",
      points,
      color: s.color,
      width: 1.5,
      dash: s.dash,
    });
  }

  if (panel.legend) {
    const lineH = 16;
    const legendX = plotX + plotW - 220;
    let legendY = plotY + 10;
    out.push({
      kind: "rect",
      x: legendX - 8,
      y: legendY - 6,
      w: 222,
      h: panel.series.length * lineH + 10,
      fill: "#ffffff",
      stroke: GRID_COLOR,
    });
    for (const s of panel.series) {
      out.push({
        kind: "line",
        x1: legendX,
        y1: legendY + 4,
        x2: legendX + 22,
        y2: legendY + 4,
        color: s.color,
        width: 2,
        dash: s.dash,
      });
      out.push({
        kind: "text",
        x: legendX + 28,
        y: legendY + 8,
        text: s.label,
        size: 11,
        color: AXIS_COLOR,
        anchor: "start",
      });
      legendY += lineH;
    }
  }
}

export function layoutFigure(figure: Figure): Scene {
  const primitives: Primitive[] = [];
  primitives.push({
    kind: "rect",
    x: 0,
    y: 0,
    w: figure.width,
    h: figure.height,
    fill: "#ffffff",
  });
  const panelH = figure.height / figure.panels.length;
  figure.panels.forEach((panel, i) => {
    layoutPanel(panel, 0, i * panelH, figure.width, panelH, primitives);
  });
  return { width: figure.width, height: figure.height, primitives };
}
