import { describe, expect, test } from "vitest";

import type { PendingQueryDto, SessionStateDto } from "../src/api.js";
import { SessionController, type SessionApi, type ViewSink } from "../src/controller.js";
import type { SessionView } from "../src/view.js";

function runningState(pendingId: number | null): SessionStateDto {
  return {
    status: "running",
    reason: null,
    variables: ["x1", "x2"],
    epsilon: 0,
    lb: 2,
    ub: 3,
    gap: 1,
    iteration: 1,
    learned_constraints: [],
    basis_size: 3,
    queries_asked: pendingId === null ? 0 : pendingId - 1,
    queries_by_kind: {},
    lower_witness: null,
    upper_witness: null,
    trace: [],
  };
}

class Collector implements ViewSink {
  views: SessionView[] = [];
  render(view: SessionView): void {
    this.views.push(view);
  }
  last(): SessionView {
    const v = this.views[this.views.length - 1];
    if (!v) throw new Error("nothing rendered");
    return v;
  }
}

class FakeApi implements SessionApi {
  answers: Array<{ queryId: number; answer: string }> = [];
  stateCalls = 0;
  failNext = false;
  conflictNext = false;
  pending: PendingQueryDto | null = {
    query_id: 1,
    kind: "toplevel",
    bindings: { x1: 1, x2: 1 },
    partial: false,
  };
  status = "running";

  async getState(): Promise<SessionStateDto> {
    if (this.failNext) {
      this.failNext = false;
      throw new Error("boom");
    }
    this.stateCalls += 1;
    const s = runningState(this.pending?.query_id ?? null);
    s.status = this.status;
    return s;
  }

  async getPendingQuery(): Promise<PendingQueryDto | null> {
    return this.pending;
  }

  async postAnswer(_sid: string, queryId: number): Promise<"ok" | "conflict"> {
    if (this.conflictNext) {
      this.conflictNext = false;
      return "conflict";
    }
    this.answers.push({ queryId, answer: "sent" });
    this.pending = null; // consumed
    return "ok";
  }
}

describe("SessionController", () => {
  test("refresh renders state plus pending query", async () => {
    const api = new FakeApi();
    const sink = new Collector();
    const controller = new SessionController(api, "s1", sink, 100000);
    const view = await controller.refresh();
    controller.stop();
    expect(view?.pending?.queryId).toBe(1);
    expect(sink.last().answersEnabled).toBe(true);
  });

  test("answer posts the pending id and re-polls immediately", async () => {
    const api = new FakeApi();
    const sink = new Collector();
    const controller = new SessionController(api, "s1", sink, 100000);
    await controller.refresh();
    await controller.answer(false);
    controller.stop();
    expect(api.answers).toEqual([{ queryId: 1, answer: "sent" }]);
    // the follow-up poll saw the consumed query
    expect(sink.last().pending).toBeNull();
  });

  test("a conflict (stale id) is not an error; it just re-renders the truth", async () => {
    const api = new FakeApi();
    const sink = new Collector();
    const controller = new SessionController(api, "s1", sink, 100000);
    await controller.refresh();
    api.conflictNext = true;
    await controller.answer(true);
    controller.stop();
    expect(api.answers).toEqual([]);
    expect(sink.last().error).toBeNull();
  });

  test("network failures keep the last rendered data", async () => {
    const api = new FakeApi();
    const sink = new Collector();
    const controller = new SessionController(api, "s1", sink, 100000);
    await controller.refresh();
    api.failNext = true;
    const view = await controller.refresh();
    controller.stop();
    expect(view?.error).toContain("boom");
    expect(view?.lb).toBe(2); // previous data survived
  });

  test("terminal status stops the polling loop", async () => {
    const api = new FakeApi();
    api.status = "optimal";
    api.pending = null;
    const sink = new Collector();
    const controller = new SessionController(api, "s1", sink, 1);
    await controller.refresh();
    const calls = api.stateCalls;
    await new Promise((resolve) => setTimeout(resolve, 30));
    controller.stop();
    expect(api.stateCalls).toBe(calls); // no further polls were scheduled
    expect(sink.last().terminal).toBe(true);
  });
});
