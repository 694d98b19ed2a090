// Polling controller: one session per instance. Fetches state plus the
// pending query, hands a fresh view to the sink, and pushes answers back.
// Transient network errors keep the last rendered data; a 409 on answer
// (stale query id) just re-polls.

import type { PendingQueryDto, SessionStateDto } from "./api.js";
import { buildView, withError, type SessionView } from "./view.js";

export interface ViewSink {
  render(view: SessionView): void;
}

/** The slice of the API the controller needs (ApiClient satisfies it). */
export interface SessionApi {
  getState(sessionId: string): Promise<SessionStateDto>;
  getPendingQuery(sessionId: string): Promise<PendingQueryDto | null>;
  postAnswer(sessionId: string, queryId: number, answer: "yes" | "no"): Promise<"ok" | "conflict">;
}

export class SessionController {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;
  private refreshing = false;
  private lastView: SessionView | null = null;

  constructor(
    private readonly api: SessionApi,
    readonly sessionId: string,
    private readonly sink: ViewSink,
    private readonly pollIntervalMs: number = 1000,
  ) {}

  start(): void {
    this.stopped = false;
    void this.refresh();
  }

  stop(): void {
    this.stopped = true;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }

  view(): SessionView | null {
    return this.lastView;
  }

  /** One poll cycle; reschedules itself until the session is terminal. */
  async refresh(): Promise<SessionView | null> {
    if (this.refreshing) {
      return this.lastView;
    }
    this.refreshing = true;
    try {
      let state: SessionStateDto;
      let pending: PendingQueryDto | null;
      try {
        state = await this.api.getState(this.sessionId);
        pending = state.status === "running" ? await this.api.getPendingQuery(this.sessionId) : null;
      } catch (err) {
        if (this.lastView !== null) {
          // non-destructive: keep showing the data we have, note the hiccup
          this.lastView = withError(this.lastView, String(err));
          this.sink.render(this.lastView);
        }
        return this.lastView;
      }
      this.lastView = buildView(this.sessionId, state, pending);
      this.sink.render(this.lastView);
      return this.lastView;
    } finally {
      this.refreshing = false;
      this.schedule();
    }
  }

  private schedule(): void {
    if (this.stopped || (this.lastView !== null && this.lastView.terminal)) {
      return;
    }
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.refresh();
    }, this.pollIntervalMs);
  }

  /** Send the answer for the currently rendered query, then re-poll. */
  async answer(yes: boolean): Promise<void> {
    const pending = this.lastView?.pending;
    if (!pending) {
      return;
    }
    try {
      // a conflict means the id went stale (double click, parallel tab);
      // either way the refresh below shows whatever is true now
      await this.api.postAnswer(this.sessionId, pending.queryId, yes ? "yes" : "no");
    } catch (err) {
      if (this.lastView !== null) {
        this.lastView = withError(this.lastView, String(err));
        this.sink.render(this.lastView);
      }
    }
    await this.refresh();
  }
}
