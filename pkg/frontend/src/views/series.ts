/** Tracked-term series chart: counts per bucket as reported by the API, with
 * a marker on every excursion the API returned and a baseline tick where the
 * API supplied one. Counts are rendered verbatim — no client-side statistics. */

import type { Excursion, SeriesResponse, WatchlistEntry } from "../types.js";

const WIDTH = 640;
const HEIGHT = 240;
const PAD = 32;

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function emptyWatchlistView(): string {
  return (
    '<div class="empty-state">No terms on the watchlist yet.' +
    ' <button data-action="watchlist-add">Add a term</button></div>'
  );
}

export interface SeriesViewModel {
  /** x pixel, y pixel, raw count, bucket label */
  points: { x: number; y: number; count: number; bucket: string }[];
  /** subset of points flagged by the API, with the API's baseline/ratio */
  markers: { x: number; y: number; excursion: Excursion }[];
  /** baseline ticks at flagged buckets, straight from the API payload */
  baselines: { x: number; y: number; value: number }[];
}

export function seriesViewModel(series: SeriesResponse, excursions: Excursion[]): SeriesViewModel {
  const points = series.points;
  const maxCount = Math.max(1, ...points.map((p) => p.count));
  const step = points.length > 1 ? (WIDTH - 2 * PAD) / (points.length - 1) : 0;
  const xAt = (index: number) => PAD + index * step;
  const yAt = (count: number) => HEIGHT - PAD - (count / maxCount) * (HEIGHT - 2 * PAD);

  const flagged = new Map(
    excursions.filter((e) => e.term === series.term).map((e) => [e.bucket_start, e]),
  );
  const model: SeriesViewModel = { points: [], markers: [], baselines: [] };
  points.forEach((point, index) => {
    const x = xAt(index);
    model.points.push({ x, y: yAt(point.count), count: point.count, bucket: point.bucket_start });
    const excursion = flagged.get(point.bucket_start);
    if (excursion) {
      model.markers.push({ x, y: yAt(excursion.count), excursion });
      model.baselines.push({ x, y: yAt(excursion.baseline), value: excursion.baseline });
    }
  });
  return model;
}

export function renderSeriesView(series: SeriesResponse, excursions: Excursion[]): string {
  const model = seriesViewModel(series, excursions);
  const path = model.points
    .map((p, i) => `${i === 0 ? "M" : "L"}${p.x.toFixed(1)},${p.y.toFixed(1)}`)
    .join(" ");
  const parts: string[] = [
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" aria-label="series ${escapeXml(series.term)}">`,
    `<path class="series-line" d="${path}" fill="none"/>`,
  ];
  for (const p of model.points) {
    parts.push(
      `<circle class="series-point" cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="2"` +
        ` data-bucket="${escapeXml(p.bucket)}" data-count="${p.count}"/>`,
    );
  }
  for (const b of model.baselines) {
    parts.push(
      `<line class="baseline-tick" x1="${(b.x - 10).toFixed(1)}" x2="${(b.x + 10).toFixed(1)}"` +
        ` y1="${b.y.toFixed(1)}" y2="${b.y.toFixed(1)}" data-baseline="${b.value}"/>`,
    );
  }
  for (const m of model.markers) {
    const e = m.excursion;
    parts.push(
      `<circle class="excursion-marker" cx="${m.x.toFixed(1)}" cy="${m.y.toFixed(1)}" r="6"` +
        ` data-bucket="${escapeXml(e.bucket_start)}" data-count="${e.count}"` +
        ` data-rule="${e.rule}" data-ratio="${e.ratio === null ? "" : e.ratio}"/>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}

/** Entry point used by the page: fetches nothing itself; the caller passes
 * API payloads so the view stays a pure function of server data. */
export function renderSeriesPage(
  watchlist: WatchlistEntry[],
  series: SeriesResponse | null,
  excursions: Excursion[],
): string {
  if (watchlist.filter((e) => e.active).length === 0) return emptyWatchlistView();
  if (series === null) return '<div class="empty-state">Select a watchlist term.</div>';
  return renderSeriesView(series, excursions);
}
