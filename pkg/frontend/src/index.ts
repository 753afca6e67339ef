export { parseResults, groupRows } from "./csv.js";
export type { Group, ResultRow, ResultTable } from "./csv.js";
export { silvermanBandwidth, kdeCurve, quantile } from "./kde.js";
export type { DensityPoint } from "./kde.js";
export { renderViolins } from "./svg.js";
export type { RenderOptions } from "./svg.js";
export { runCli } from "./cli.js";
