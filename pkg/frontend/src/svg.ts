/** Minimal deterministic SVG renderer: multi-panel line charts with linear
 *  or logarithmic axes, fit overlays, vertical markers, and a legend. */

import type { Panel } from "./types.js";

const PANEL_W = 420;
const PANEL_H = 320;
const MARGIN = { left: 64, right: 16, top: 40, bottom: 48 };

function fmt(v: number): string {
  return Number.isInteger(v) && Math.abs(v) < 1e6 ? String(v) : v.toPrecision(3);
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

class Scale {
  constructor(
    readonly log: boolean,
    readonly lo: number,
    readonly hi: number,
    readonly outLo: number,
    readonly outHi: number
  ) {}

  map(v: number): number {
    const [a, b] = this.log ? [Math.log10(this.lo), Math.log10(this.hi)] : [this.lo, this.hi];
    const x = this.log ? Math.log10(v) : v;
    const f = (x - a) / (b - a || 1);
    return this.outLo + f * (this.outHi - this.outLo);
  }

  ticks(): number[] {
    if (this.log) {
      const lo = Math.ceil(Math.log10(this.lo));
      const hi = Math.floor(Math.log10(this.hi));
      const out: number[] = [];
      for (let e = lo; e <= hi; e++) out.push(10 ** e);
      if (out.length >= 2) return out;
      return [this.lo, this.hi];
    }
    const span = this.hi - this.lo;
    const step = 10 ** Math.floor(Math.log10(span / 4 || 1));
    const mult = span / step > 8 ? 2 : 1;
    const out: number[] = [];
    for (let v = Math.ceil(this.lo / (step * mult)) * step * mult; v <= this.hi; v += step * mult) {
      out.push(Number(v.toPrecision(10)));
    }
    return out;
  }
}

function dataRange(values: number[], log: boolean): [number, number] {
  const usable = values.filter((v) => Number.isFinite(v) && (!log || v > 0));
  if (usable.length === 0) return log ? [1e-12, 1] : [0, 1];
  let lo = Math.min(...usable);
  let hi = Math.max(...usable);
  if (lo === hi) {
    lo = log ? lo / 2 : lo - 1;
    hi = log ? hi * 2 : hi + 1;
  }
  if (log) return [lo / 1.5, hi * 1.5];
  const pad = 0.05 * (hi - lo);
  return [lo - pad, hi + pad];
}

/** Fit overlay curve from stored parameters only (never refitted): the
 *  winning model evaluated over the stored fit window. */
export function fitCurve(
  verdict: { model: string; eta: number | null; xi: number | null; amplitude: number | null; fit_window: [number, number] },
  samples = 60
): Array<[number, number]> | null {
  if (!verdict || verdict.amplitude == null) return null;
  const [lo, hi] = verdict.fit_window;
  const out: Array<[number, number]> = [];
  for (let i = 0; i <= samples; i++) {
    const x = lo + ((hi - lo) * i) / samples;
    let y: number;
    if (verdict.model === "algebraic" && verdict.eta != null) {
      y = verdict.amplitude * x ** -verdict.eta;
    } else if (verdict.model === "exponential" && verdict.xi != null) {
      y = verdict.amplitude * Math.exp(-x / verdict.xi);
    } else {
      return null;
    }
    out.push([x, y]);
  }
  return out;
}

function polyline(points: Array<[number, number]>, sx: Scale, sy: Scale): string {
  return points
    .filter(([x, y]) => (!sx.log || x > 0) && (!sy.log || y > 0))
    .map(([x, y]) => `${sx.map(x).toFixed(2)},${sy.map(y).toFixed(2)}`)
    .join(" ");
}

function renderPanel(panel: Panel, x0: number, y0: number): string {
  const left = x0 + MARGIN.left;
  const right = x0 + PANEL_W - MARGIN.right;
  const top = y0 + MARGIN.top;
  const bottom = y0 + PANEL_H - MARGIN.bottom;

  const xs = panel.series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = panel.series.flatMap((s) =>
    s.points.map((p) => p[1]).concat(fitYs(panel))
  );
  const [xlo, xhi] = dataRange(xs, panel.xLog);
  const [ylo, yhi] = dataRange(ys, panel.yLog);
  const sx = new Scale(panel.xLog, xlo, xhi, left, right);
  const sy = new Scale(panel.yLog, ylo, yhi, bottom, top);

  const parts: string[] = [];
  parts.push(
    `<rect x="${left}" y="${top}" width="${right - left}" height="${bottom - top}" fill="none" stroke="#333"/>`
  );
  for (const tx of sx.ticks()) {
    const px = sx.map(tx).toFixed(2);
    parts.push(`<line x1="${px}" y1="${bottom}" x2="${px}" y2="${bottom + 4}" stroke="#333"/>`);
    parts.push(
      `<text x="${px}" y="${bottom + 16}" font-size="10" text-anchor="middle">${fmt(tx)}</text>`
    );
  }
  for (const ty of sy.ticks()) {
    const py = sy.map(ty).toFixed(2);
    parts.push(`<line x1="${left - 4}" y1="${py}" x2="${left}" y2="${py}" stroke="#333"/>`);
    parts.push(
      `<text x="${left - 7}" y="${py}" font-size="10" text-anchor="end" dominant-baseline="middle">${fmt(ty)}</text>`
    );
  }
  parts.push(
    `<text x="${(left + right) / 2}" y="${y0 + 18}" font-size="12" font-weight="bold" text-anchor="middle">${esc(panel.title)}</text>`
  );
  parts.push(
    `<text x="${(left + right) / 2}" y="${bottom + 34}" font-size="11" text-anchor="middle">${esc(panel.xLabel)}</text>`
  );
  parts.push(
    `<text x="${x0 + 14}" y="${(top + bottom) / 2}" font-size="11" text-anchor="middle" transform="rotate(-90 ${x0 + 14} ${(top + bottom) / 2})">${esc(panel.yLabel)}</text>`
  );

  let legendY = top + 12;
  for (const s of panel.series) {
    for (const m of s.markers ?? []) {
      if (m < xlo || m > xhi) continue;
      const px = sx.map(m).toFixed(2);
      parts.push(
        `<line x1="${px}" y1="${top}" x2="${px}" y2="${bottom}" stroke="${s.color}" stroke-width="0.6" stroke-dasharray="2,3" opacity="0.8"/>`
      );
    }
    parts.push(
      `<polyline points="${polyline(s.points, sx, sy)}" fill="none" stroke="${s.color}" stroke-width="1.4"/>`
    );
    const overlay = s.verdict ? fitCurve(s.verdict) : null;
    if (overlay) {
      parts.push(
        `<polyline points="${polyline(overlay, sx, sy)}" fill="none" stroke="${s.color}" stroke-width="2.4" opacity="0.45"/>`
      );
    }
    parts.push(
      `<line x1="${right - 130}" y1="${legendY}" x2="${right - 112}" y2="${legendY}" stroke="${s.color}" stroke-width="2"/>`
    );
    parts.push(
      `<text x="${right - 106}" y="${legendY + 3.5}" font-size="10">${esc(s.label)}</text>`
    );
    legendY += 14;
  }
  return parts.join("\n");
}

function fitYs(panel: Panel): number[] {
  const out: number[] = [];
  for (const s of panel.series) {
    const overlay = s.verdict ? fitCurve(s.verdict) : null;
    if (overlay) out.push(...overlay.map((p) => p[1]));
  }
  return out;
}

export function renderFigure(panels: Panel[], columns = panels.length): string {
  const cols = Math.max(1, Math.min(columns, panels.length));
  const rows = Math.ceil(panels.length / cols);
  const width = cols * PANEL_W;
  const height = rows * PANEL_H;
  const body = panels
    .map((p, i) => renderPanel(p, (i % cols) * PANEL_W, Math.floor(i / cols) * PANEL_H))
    .join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n${body}\n</svg>\n`
  );
}
