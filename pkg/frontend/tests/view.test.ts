import { describe, expect, test } from "vitest";

import type { PendingQueryDto, SessionStateDto } from "../src/api.js";
import { buildView, describeStatus, withError } from "../src/view.js";

function state(overrides: Partial<SessionStateDto> = {}): SessionStateDto {
  return {
    status: "running",
    reason: null,
    variables: ["x1", "x2", "x3"],
    epsilon: 0,
    lb: 3,
    ub: 6,
    gap: 3,
    iteration: 1,
    learned_constraints: ["x1 < x2"],
    basis_size: 7,
    queries_asked: 2,
    queries_by_kind: { toplevel: 1, findscope: 1 },
    lower_witness: { x1: 1, x2: 1, x3: 1 },
    upper_witness: { x1: 1, x2: 2, x3: 3 },
    trace: [
      { iteration: 0, lb: 3, ub: 6, queries: 0, elapsed_seconds: 0.01 },
      { iteration: 1, lb: 3, ub: 6, queries: 2, elapsed_seconds: 0.05 },
    ],
    ...overrides,
  };
}

const completeQuery: PendingQueryDto = {
  query_id: 3,
  kind: "toplevel",
  bindings: { x1: 1, x2: 1, x3: 1 },
  partial: false,
};

describe("buildView", () => {
  test("complete pending query renders every variable and enables answers", () => {
    const view = buildView("s1", state(), completeQuery);
    expect(view.pending?.rows).toEqual([
      { variable: "x1", value: 1 },
      { variable: "x2", value: 1 },
      { variable: "x3", value: 1 },
    ]);
    expect(view.pending?.partial).toBe(false);
    expect(view.answersEnabled).toBe(true);
    // every displayed number is exactly what the server sent
    expect(view.lb).toBe(3);
    expect(view.ub).toBe(6);
    expect(view.learned).toEqual(["x1 < x2"]);
  });

  test("partial query leaves unbound variables visibly blank", () => {
    const partial: PendingQueryDto = {
      query_id: 4,
      kind: "findscope",
      bindings: { x1: 1, x3: 2 },
      partial: true,
    };
    const view = buildView("s1", state(), partial);
    expect(view.pending?.rows).toEqual([
      { variable: "x1", value: 1 },
      { variable: "x2", value: null },
      { variable: "x3", value: 2 },
    ]);
    expect(view.pending?.partial).toBe(true);
  });

  test("no pending query disables the answer buttons", () => {
    const view = buildView("s1", state(), null);
    expect(view.pending).toBeNull();
    expect(view.answersEnabled).toBe(false);
    expect(describeStatus(view)).toContain("solver working");
  });

  test("terminal state hides answers even if a query were reported", () => {
    const done = state({ status: "optimal", reason: "gap", lb: 6, ub: 6, gap: 0 });
    const view = buildView("s1", done, completeQuery);
    expect(view.terminal).toBe(true);
    expect(view.pending).toBeNull();
    expect(view.answersEnabled).toBe(false);
  });

  test("near-optimal and collapsed are terminal too", () => {
    for (const status of ["near_optimal", "collapsed"]) {
      expect(buildView("s", state({ status }), null).terminal).toBe(true);
    }
  });
});

describe("withError", () => {
  test("keeps the previous data and only sets the banner", () => {
    const view = buildView("s1", state(), completeQuery);
    const flagged = withError(view, "network down");
    expect(flagged.error).toBe("network down");
    expect(flagged.lb).toBe(view.lb);
    expect(flagged.pending).toEqual(view.pending);
  });
});
