/** View state is a pure function of the URL: reloading a link reproduces the
 * screen. Nothing here is stored outside the query string. */

export interface ViewState {
  period: string | null;
  term: string | null;
  seed: string | null;
  depth: number;
  minWeight: number;
  auditCursor: number;
  logScale: boolean;
}

export const DEFAULT_STATE: ViewState = {
  period: null,
  term: null,
  seed: null,
  depth: 2,
  minWeight: 50,
  auditCursor: 0,
  logScale: true,
};

function intOr(value: string | null, fallback: number): number {
  if (value === null) return fallback;
  const parsed = Number.parseInt(value, 10);
  return Number.isFinite(parsed) ? parsed : fallback;
}

export function parseState(search: string): ViewState {
  const params = new URLSearchParams(search);
  return {
    period: params.get("period"),
    term: params.get("term"),
    seed: params.get("seed"),
    depth: intOr(params.get("depth"), DEFAULT_STATE.depth),
    minWeight: intOr(params.get("min_weight"), DEFAULT_STATE.minWeight),
    auditCursor: intOr(params.get("cursor"), DEFAULT_STATE.auditCursor),
    logScale: params.get("log") !== "0",
  };
}

export function serializeState(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.period !== null) params.set("period", state.period);
  if (state.term !== null) params.set("term", state.term);
  if (state.seed !== null) params.set("seed", state.seed);
  if (state.depth !== DEFAULT_STATE.depth) params.set("depth", String(state.depth));
  if (state.minWeight !== DEFAULT_STATE.minWeight) params.set("min_weight", String(state.minWeight));
  if (state.auditCursor !== DEFAULT_STATE.auditCursor) params.set("cursor", String(state.auditCursor));
  if (!state.logScale) params.set("log", "0");
  return params.toString();
}
