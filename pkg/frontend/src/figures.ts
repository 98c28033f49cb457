/** Figure layouts: which artifacts feed which panels.
 *
 * Fitted curves and cusp markers come exclusively from the JSON summaries;
 * this module never fits anything.
 */

import { existsSync } from "fs";
import path from "path";

import { SchemaError, readProfile, readRateSeries, readSummary, readSweep } from "./io.js";
import type { FigureId, FigureSeries, Panel, RunSummary } from "./types.js";

const COLORS = ["#c0392b", "#2167ae", "#2d8a4f", "#8e44ad", "#b8860b", "#444444"];

function profileSeries(
  dir: string,
  label: string,
  color: string,
  baseName: string,
  csvName = "profile"
): FigureSeries {
  const summary = readSummary(path.join(dir, `${baseName}_summary.json`));
  const points = readProfile(path.join(dir, `${baseName}_${csvName}.csv`)).map(
    (p) => [p.R, p.I] as [number, number]
  );
  const verdict =
    csvName === "profile_same_phase"
      ? summary.verdict_same_phase
      : csvName === "profile_cross_phase"
        ? summary.verdict_cross_phase
        : summary.verdict;
  return { label, points, color, verdict };
}

function rateSeries(dir: string, label: string, color: string, baseName: string): FigureSeries {
  const summary = readSummary(path.join(dir, `${baseName}_summary.json`));
  const points = readRateSeries(path.join(dir, `${baseName}_rate_function.csv`)).map(
    (p) => [p.t, p.rate] as [number, number]
  );
  return { label, points, color, markers: summary.cusps ?? [] };
}

function betaSeries(dir: string, baseName: string): { data: FigureSeries; fitLine: FigureSeries } {
  const summary = readSummary(path.join(dir, `${baseName}_summary.json`));
  const fss = summary.finite_size_fit;
  if (!fss) throw new SchemaError(`${baseName}: summary lacks finite_size_fit`);
  const pts: Array<[number, number]> = [];
  for (const [N, eta] of readSweep(path.join(dir, `${baseName}_finite_size_sweep.csv`)).map(
    (p) => [p.N, p.eta] as [number, number]
  )) {
    const d = Math.abs(eta - fss.eta_inf);
    if (d > 0) pts.push([N, d]);
  }
  if (pts.length === 0) throw new SchemaError(`${baseName}: no finite eta differences`);
  const line: Array<[number, number]> = pts.map(([N]) => [
    N,
    Math.exp(fss.beta_intercept) * N ** fss.beta_exponent,
  ]);
  return {
    data: { label: "|eta_N - eta_inf|", points: pts, color: COLORS[0] },
    fitLine: {
      label: `slope ${fss.beta_exponent.toFixed(2)}`,
      points: line,
      color: COLORS[1],
    },
  };
}

function verdictLabel(dir: string, baseName: string, key: "verdict" | "verdict_same_phase" | "verdict_cross_phase" = "verdict"): string {
  const summary = readSummary(path.join(dir, `${baseName}_summary.json`));
  const v = (summary as RunSummary)[key];
  if (!v) return "no fit";
  if (v.model === "algebraic" && v.eta != null) return `algebraic, eta=${v.eta.toFixed(2)}`;
  if (v.model === "exponential" && v.xi != null) return `exponential, xi=${v.xi.toFixed(2)}`;
  return v.model;
}

export function buildFigure(figure: FigureId, inputDir: string): Panel[] {
  switch (figure) {
    case "fig2": {
      const dir = path.join(inputDir, "fig2");
      return ["1.5", "3.0"].map((af, i) => ({
        title: `global quench to alpha=${af}`,
        xLabel: "t",
        yLabel: "rate",
        xLog: false,
        yLog: false,
        series: ["1.2", "2.5"].map((h, j) =>
          rateSeries(dir, `h=${h}`, COLORS[j], `rate_h${h}_a${af}`)
        ),
      }));
    }
    case "fig3":
    case "fig4": {
      const h = figure === "fig3" ? "0.5" : "2.5";
      const dir = path.join(inputDir, figure);
      const panelA: Panel = {
        title: `steady-state profiles, h=${h}`,
        xLabel: "R",
        yLabel: "I_R",
        xLog: true,
        yLog: true,
        series: ["0.8", "1.5", "3.0"].map((af, i) =>
          profileSeries(
            dir,
            `alpha->${af}: ${verdictLabel(dir, `profile_h${h}_a${af}`)}`,
            COLORS[i],
            `profile_h${h}_a${af}`
          )
        ),
      };
      const panelB: Panel = {
        title: "quench to alpha=0.8, sizes",
        xLabel: "R",
        yLabel: "I_R",
        xLog: true,
        yLog: true,
        series: ["50", "100", "200"].map((n, i) =>
          profileSeries(dir, `N=${n}`, COLORS[i], `profile_h${h}_a0.8_N${n}`)
        ),
      };
      const beta = betaSeries(dir, "sweep");
      const panelC: Panel = {
        title: "finite-size convergence",
        xLabel: "N",
        yLabel: "|eta_N - eta_inf|",
        xLog: true,
        yLog: true,
        series: [beta.data, beta.fitLine],
      };
      return [panelA, panelB, panelC];
    }
    case "fig5": {
      const dir = path.join(inputDir, "fig5");
      return ["1.5", "3.0"].map((alpha) => ({
        title: `local quench pair at alpha=${alpha}`,
        xLabel: "R",
        yLabel: "I_R",
        xLog: false,
        yLog: true,
        series: [
          {
            ...profileSeries(
              dir,
              `same phase: ${verdictLabel(dir, `fgc_a${alpha}`, "verdict_same_phase")}`,
              COLORS[0],
              `fgc_a${alpha}`,
              "profile_same_phase"
            ),
          },
          {
            ...profileSeries(
              dir,
              `across transition: ${verdictLabel(dir, `fgc_a${alpha}`, "verdict_cross_phase")}`,
              COLORS[1],
              `fgc_a${alpha}`,
              "profile_cross_phase"
            ),
          },
        ],
      }));
    }
    case "fig6": {
      const dir = path.join(inputDir, "fig6");
      return ["0.5", "1.0", "3.0"].map((alpha) => ({
        title: `local quench at alpha=${alpha}`,
        xLabel: "t",
        yLabel: "rate",
        xLog: false,
        yLog: false,
        series: [
          rateSeries(dir, "h 0.5->1.5", COLORS[0], `rate_a${alpha}_h1.5`),
          rateSeries(dir, "h 0.5->2.5", COLORS[1], `rate_a${alpha}_h2.5`),
        ],
      }));
    }
    default:
      throw new SchemaError(`unknown figure id ${figure satisfies never}`);
  }
}

export function figureExists(figure: FigureId, inputDir: string): boolean {
  return existsSync(path.join(inputDir, figure));
}
