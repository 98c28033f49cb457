export { buildFigure, figureExists } from "./figures.js";
export { SchemaError, readProfile, readRateSeries, readSummary, readSweep } from "./io.js";
export { fitCurve, renderFigure } from "./svg.js";
export type * from "./types.js";
