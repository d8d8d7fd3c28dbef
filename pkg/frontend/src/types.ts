/** Payload types for the /v1 HTTP API. Field names mirror the wire format. */

export interface KeynessRow {
  term: string;
  log_ratio: number;
  f_target: number;
  n_target: number;
  f_reference: number;
  n_reference: number;
  smoothed: boolean;
}

export interface KeynessResponse {
  period: string;
  results: KeynessRow[];
}

export interface TfidfRow {
  term: string;
  score: number;
  df: number;
  tf_total: number;
  term_kind: string;
}

export interface TfidfResponse {
  kind: string;
  results: TfidfRow[];
}

export interface GraphNode {
  id: string;
  prevalence: number;
}

export interface GraphEdge {
  a: string;
  b: string;
  w: number;
}

export interface GraphResponse {
  nodes: GraphNode[];
  edges: GraphEdge[];
  seed: string | null;
  window: [string, string] | null;
}

export interface SeriesPoint {
  bucket_start: string;
  count: number;
}

export interface SeriesResponse {
  term: string;
  granularity: string;
  points: SeriesPoint[];
}

export interface Excursion {
  term: string;
  bucket_start: string;
  count: number;
  baseline: number;
  /** count / baseline; null when the baseline mean is zero. */
  ratio: number | null;
  rule: "multiple" | "sigma";
}

export interface ExcursionsResponse {
  excursions: Excursion[];
}

export interface WatchlistEntry {
  term: string;
  granularity: string;
  added_by: string;
  added_at: string;
  active: boolean;
}

export interface WatchlistResponse {
  entries: WatchlistEntry[];
}

export interface WatchlistRequest {
  term: string;
  granularity?: string;
  action?: "add" | "deactivate";
  actor?: string;
}

export interface IngestSummary {
  accepted: number;
  duplicates: number;
  rejected: number;
}

export type LabelValue =
  | "REFUSAL"
  | "WARNING"
  | "CORRECTION"
  | "DEBUNK_OR_CONCERN"
  | "PROMOTION"
  | "COMPLIANCE_OTHER";

export interface TallyResponse {
  bot: string;
  denominator: number;
  counts: Record<string, number>;
}

export interface WriteAck {
  ok: boolean;
  revision: number;
}
