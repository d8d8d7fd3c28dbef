/** Polling loop for the excursion inbox; month/day granularity data does not
 * warrant push. Errors surface through onError and never stop the loop. */

export interface Poller {
  stop(): void;
}

export function startPolling(
  tick: () => Promise<void>,
  onError: (error: unknown) => void,
  intervalMs = 30_000,
): Poller {
  let stopped = false;
  const run = () => {
    if (stopped) return;
    void tick().catch(onError);
  };
  run();
  const handle = setInterval(run, intervalMs);
  return {
    stop() {
      stopped = true;
      clearInterval(handle);
    },
  };
}
