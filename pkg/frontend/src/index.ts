export { ApiClient, ApiError } from "./api.js";
export type { FetchLike } from "./api.js";
export * from "./types.js";
export { DEFAULT_STATE, parseState, serializeState } from "./state.js";
export type { ViewState } from "./state.js";
export {
  emptyWatchlistView,
  renderSeriesPage,
  renderSeriesView,
  seriesViewModel,
} from "./views/series.js";
export { filterGraph, graphViewModel, nodeRadius, renderGraphView } from "./views/graph.js";
export { barWidth, renderKeynessTable, renderTfidfBars } from "./views/signatures.js";
export { AuditQueue, renderTally } from "./views/audit.js";
export type { QueueItem, SubmitOutcome } from "./views/audit.js";
export { startPolling } from "./poll.js";
export type { Poller } from "./poll.js";
