/** Data contracts of the simulator's CSV and JSON artifacts. */

export interface ProfilePoint {
  R: number;
  I: number;
}

export interface RatePoint {
  t: number;
  rate: number;
}

export interface SweepPoint {
  N: number;
  eta: number;
}

/** Fitted decay verdict as serialized in the JSON summaries. */
export interface Verdict {
  model: "algebraic" | "exponential" | "inconclusive";
  eta: number | null;
  xi: number | null;
  r2_alg: number;
  r2_exp: number;
  fit_window: [number, number];
  margin: number;
  n_points: number;
  amplitude: number | null;
}

export interface FiniteSizeFit {
  sizes: number[];
  etas: number[];
  eta_inf: number;
  beta_exponent: number;
  beta_intercept: number;
}

export interface RunSummary {
  version: string;
  pfaffian_kernel: string;
  config: Record<string, string | number>;
  verdict?: Verdict | null;
  verdict_same_phase?: Verdict;
  verdict_cross_phase?: Verdict;
  fgc?: string;
  cgc?: string;
  cusps?: number[];
  predicted_cusp_times?: number[];
  finite_size_fit?: FiniteSizeFit;
  all_below_floor?: string;
}

/** One curve to draw: data points plus an optional fit overlay taken
 *  verbatim from the summary (never refitted here). */
export interface FigureSeries {
  label: string;
  points: Array<[number, number]>;
  color: string;
  verdict?: Verdict | null;
  markers?: number[]; // vertical marker positions (cusp times)
}

export interface Panel {
  title: string;
  xLabel: string;
  yLabel: string;
  xLog: boolean;
  yLog: boolean;
  series: FigureSeries[];
}

export type FigureId = "fig2" | "fig3" | "fig4" | "fig5" | "fig6";
