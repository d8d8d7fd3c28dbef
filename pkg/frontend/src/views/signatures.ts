/** Keyness table and TF-IDF bar chart. Scores render exactly as reported;
 * the log-scale toggle (default on) only changes bar geometry, never the
 * displayed numbers. */

import type { KeynessRow, TfidfRow } from "../types.js";

const BAR_MAX = 400;

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderKeynessTable(rows: KeynessRow[]): string {
  const body = rows
    .map(
      (r) =>
        `<tr><td>${escapeHtml(r.term)}</td><td data-score="${r.log_ratio}">` +
        `${r.log_ratio.toFixed(3)}</td><td>${r.f_target}</td><td>${r.f_reference}</td>` +
        `<td>${r.smoothed ? "~" : ""}</td></tr>`,
    )
    .join("");
  return (
    "<table class=\"keyness\"><thead><tr><th>term</th><th>log ratio</th>" +
    "<th>f target</th><th>f reference</th><th></th></tr></thead>" +
    `<tbody>${body}</tbody></table>`
  );
}

/** Bar width for a score; monotone in score under both scalings. */
export function barWidth(score: number, maxScore: number, logScale: boolean): number {
  if (maxScore <= 0 || score <= 0) return 0;
  if (!logScale) return (score / maxScore) * BAR_MAX;
  return (Math.log1p(score) / Math.log1p(maxScore)) * BAR_MAX;
}

export function renderTfidfBars(rows: TfidfRow[], logScale = true): string {
  const maxScore = Math.max(0, ...rows.map((r) => r.score));
  const bars = rows
    .map((r) => {
      const width = barWidth(r.score, maxScore, logScale);
      return (
        `<div class="tfidf-row"><span class="term">${escapeHtml(r.term)}</span>` +
        `<span class="bar" style="width:${width.toFixed(1)}px" data-score="${r.score}"` +
        ` data-df="${r.df}"></span><span class="value">${r.score.toFixed(2)}</span></div>`
      );
    })
    .join("");
  return `<div class="tfidf" data-log-scale="${logScale}">${bars}</div>`;
}
