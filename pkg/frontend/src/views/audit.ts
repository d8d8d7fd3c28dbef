/** Audit labeling queue. Writes are server-acknowledged only: the view never
 * updates optimistically — submit() resolves after the POST succeeds, and the
 * caller re-fetches the tally to show the new counts. */

import type { ApiClient } from "../api.js";
import { ApiError } from "../api.js";
import type { LabelValue, TallyResponse } from "../types.js";

export interface QueueItem {
  pairId: string;
  bot: string;
  promptText: string;
  responseText: string;
}

export type SubmitOutcome =
  | { kind: "acknowledged"; revision: number; tally: TallyResponse }
  | { kind: "not-found"; message: string }
  | { kind: "rejected"; message: string };

export class AuditQueue {
  private cursor = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly items: QueueItem[],
  ) {}

  get current(): QueueItem | null {
    return this.items[this.cursor] ?? null;
  }

  get position(): number {
    return this.cursor;
  }

  /** POST the verdict; on success advance the queue and return the fresh
   * tally for the item's bot so the caller renders server truth. */
  async submit(labels: LabelValue[]): Promise<SubmitOutcome> {
    const item = this.current;
    if (item === null) return { kind: "rejected", message: "queue is empty" };
    try {
      const ack = await this.api.submitLabels(item.pairId, labels);
      const tally = await this.api.auditTally(item.bot);
      this.cursor += 1;
      return { kind: "acknowledged", revision: ack.revision, tally };
    } catch (error) {
      if (error instanceof ApiError) {
        return error.notFound
          ? { kind: "not-found", message: error.message }
          : { kind: "rejected", message: error.message };
      }
      throw error;
    }
  }
}

export function renderTally(tally: TallyResponse): string {
  const rows = Object.entries(tally.counts)
    .sort(([a], [b]) => a.localeCompare(b))
    .map(
      ([label, count]) =>
        `<tr><td>${label}</td><td data-count="${count}">${count}/${tally.denominator}</td></tr>`,
    )
    .join("");
  return `<table class="tally" data-bot="${tally.bot}"><tbody>${rows}</tbody></table>`;
}
