import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { AuditQueue, renderTally } from "../src/views/audit.js";
import type { LabelValue } from "../src/types.js";

/** In-memory stand-in for the server's audit endpoints: heuristic labels are
 * fixed per pair; a manual submission replaces them entirely, and the tally
 * recounts from effective labels — mirroring the server's override rule. */
function fakeAuditServer(heuristic: Record<string, { bot: string; labels: LabelValue[] }>) {
  const manual = new Map<string, LabelValue[]>();
  const fetchImpl = async (url: string, init?: RequestInit): Promise<Response> => {
    const parsed = new URL(url);
    if (parsed.pathname === "/v1/audit/labels" && init?.method === "POST") {
      const body = JSON.parse(String(init.body)) as { pair_id: string; labels: LabelValue[] };
      if (!(body.pair_id in heuristic)) {
        return Response.json({ error: `no pair with id '${body.pair_id}'` }, { status: 404 });
      }
      manual.set(body.pair_id, body.labels);
      return Response.json({ ok: true, revision: manual.size });
    }
    if (parsed.pathname === "/v1/audit/tally") {
      const bot = parsed.searchParams.get("bot")!;
      const counts: Record<string, number> = {};
      let denominator = 0;
      for (const [pairId, entry] of Object.entries(heuristic)) {
        if (entry.bot !== bot) continue;
        denominator += 1;
        for (const label of manual.get(pairId) ?? entry.labels) {
          counts[label] = (counts[label] ?? 0) + 1;
        }
      }
      return Response.json({ bot, denominator, counts });
    }
    return Response.json({ error: "unknown route" }, { status: 400 });
  };
  return new ApiClient("http://audit.test", fetchImpl);
}

const PAIRS: Record<string, { bot: string; labels: LabelValue[] }> = {
  rg001: { bot: "conspiracy_ai", labels: ["PROMOTION"] },
  rg002: { bot: "conspiracy_ai", labels: ["PROMOTION"] },
  rg003: { bot: "conspiracy_ai", labels: ["DEBUNK_OR_CONCERN"] },
};

describe("audit queue", () => {
  it("submitting a manual label changes the subsequent tally", async () => {
    const api = fakeAuditServer(PAIRS);
    const before = await api.auditTally("conspiracy_ai");
    expect(before.counts).toEqual({ PROMOTION: 2, DEBUNK_OR_CONCERN: 1 });

    const queue = new AuditQueue(api, [
      { pairId: "rg001", bot: "conspiracy_ai", promptText: "p", responseText: "r" },
    ]);
    const outcome = await queue.submit(["DEBUNK_OR_CONCERN"]);
    expect(outcome.kind).toBe("acknowledged");
    if (outcome.kind === "acknowledged") {
      expect(outcome.tally.counts).toEqual({ PROMOTION: 1, DEBUNK_OR_CONCERN: 2 });
    }
    const after = await api.auditTally("conspiracy_ai");
    expect(after.counts).toEqual({ PROMOTION: 1, DEBUNK_OR_CONCERN: 2 });
  });

  it("only advances the cursor after the server acknowledges", async () => {
    const api = fakeAuditServer(PAIRS);
    const queue = new AuditQueue(api, [
      { pairId: "missing", bot: "conspiracy_ai", promptText: "p", responseText: "r" },
      { pairId: "rg002", bot: "conspiracy_ai", promptText: "p", responseText: "r" },
    ]);
    const outcome = await queue.submit(["REFUSAL"]);
    expect(outcome.kind).toBe("not-found");
    expect(queue.position).toBe(0);

    // skip is an explicit decision left to the caller; here we emulate it by
    // submitting against the next real pair after removing the dead item
    const fresh = new AuditQueue(api, [
      { pairId: "rg002", bot: "conspiracy_ai", promptText: "p", responseText: "r" },
    ]);
    expect((await fresh.submit(["WARNING"])).kind).toBe("acknowledged");
    expect(fresh.position).toBe(1);
    expect(fresh.current).toBeNull();
  });

  it("resubmitting the same labels is an acknowledged no-op on the tally", async () => {
    const api = fakeAuditServer(PAIRS);
    const first = new AuditQueue(api, [
      { pairId: "rg003", bot: "conspiracy_ai", promptText: "p", responseText: "r" },
    ]);
    const a = await first.submit(["DEBUNK_OR_CONCERN"]);
    const second = new AuditQueue(api, [
      { pairId: "rg003", bot: "conspiracy_ai", promptText: "p", responseText: "r" },
    ]);
    const b = await second.submit(["DEBUNK_OR_CONCERN"]);
    expect(a.kind).toBe("acknowledged");
    expect(b.kind).toBe("acknowledged");
    if (a.kind === "acknowledged" && b.kind === "acknowledged") {
      expect(b.tally.counts).toEqual(a.tally.counts);
    }
  });

  it("reports an empty queue instead of posting", async () => {
    const queue = new AuditQueue(fakeAuditServer(PAIRS), []);
    expect((await queue.submit(["REFUSAL"])).kind).toBe("rejected");
  });
});

describe("tally rendering", () => {
  it("renders counts verbatim with the denominator", () => {
    const html = renderTally({
      bot: "chatgpt",
      denominator: 20,
      counts: { REFUSAL: 17, WARNING: 11 },
    });
    expect(html).toContain('data-count="17"');
    expect(html).toContain("17/20");
    expect(html).toContain("11/20");
  });
});
