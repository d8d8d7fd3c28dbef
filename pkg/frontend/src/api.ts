/** Typed client for the /v1 HTTP API. All reads and writes go through here;
 * views never talk to the network directly and never recompute statistics
 * that the server already reports. */

import type {
  ExcursionsResponse,
  GraphResponse,
  IngestSummary,
  KeynessResponse,
  LabelValue,
  SeriesResponse,
  TallyResponse,
  TfidfResponse,
  WatchlistRequest,
  WatchlistResponse,
  WriteAck,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }

  get notFound(): boolean {
    return this.status === 404;
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { error?: string };
    if (body.error) message = body.error;
  } catch {
    /* non-JSON error body: keep the status message */
  }
  throw new ApiError(response.status, message);
}

function query(params: Record<string, string | number | undefined>): string {
  const search = new URLSearchParams();
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined) search.set(key, String(value));
  }
  const encoded = search.toString();
  return encoded ? `?${encoded}` : "";
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path);
    await raiseForStatus(response);
    return (await response.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    await raiseForStatus(response);
    return (await response.json()) as T;
  }

  ingest(jsonlBody: string): Promise<IngestSummary> {
    return this.fetchImpl(this.baseUrl + "/v1/ingest", {
      method: "POST",
      headers: { "content-type": "application/x-ndjson" },
      body: jsonlBody,
    }).then(async (response) => {
      await raiseForStatus(response);
      return (await response.json()) as IngestSummary;
    });
  }

  keyness(period: string, opts: { n?: number; minFreq?: number } = {}): Promise<KeynessResponse> {
    return this.getJson(`/v1/keyness${query({ period, n: opts.n, min_freq: opts.minFreq })}`);
  }

  tfidf(opts: { kind?: string; n?: number; postKind?: string } = {}): Promise<TfidfResponse> {
    return this.getJson(
      `/v1/tfidf${query({ kind: opts.kind, n: opts.n, post_kind: opts.postKind })}`,
    );
  }

  graph(opts: { seed?: string; minWeight?: number; depth?: number } = {}): Promise<GraphResponse> {
    return this.getJson(
      `/v1/graph${query({ seed: opts.seed, min_weight: opts.minWeight, depth: opts.depth })}`,
    );
  }

  series(term: string, granularity?: string): Promise<SeriesResponse> {
    return this.getJson(`/v1/series/${encodeURIComponent(term)}${query({ granularity })}`);
  }

  excursions(term?: string, granularity?: string): Promise<ExcursionsResponse> {
    return this.getJson(`/v1/excursions${query({ term, granularity })}`);
  }

  watchlist(): Promise<WatchlistResponse> {
    return this.getJson("/v1/watchlist");
  }

  updateWatchlist(request: WatchlistRequest): Promise<WriteAck> {
    return this.postJson("/v1/watchlist", request);
  }

  auditTally(bot: string): Promise<TallyResponse> {
    return this.getJson(`/v1/audit/tally${query({ bot })}`);
  }

  submitLabels(pairId: string, labels: LabelValue[]): Promise<WriteAck> {
    return this.postJson("/v1/audit/labels", { pair_id: pairId, labels });
  }
}
