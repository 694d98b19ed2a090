// The view model is a pure projection of the two API payloads. No domain
// logic lives here: every number shown is a number the server sent.

import type { PendingQueryDto, SessionStateDto, TracePoint } from "./api.js";

export interface QueryRow {
  variable: string;
  value: number | null; // null renders as a visibly blank cell
}

export interface PendingView {
  queryId: number;
  kind: string;
  partial: boolean;
  rows: QueryRow[];
}

export interface SessionView {
  sessionId: string;
  status: string;
  reason: string | null;
  lb: number | null;
  ub: number | null;
  gap: number | null;
  epsilon: number;
  iteration: number;
  queriesAsked: number;
  basisSize: number;
  learned: string[];
  trace: TracePoint[];
  pending: PendingView | null;
  /** buttons live only while a query is pending and the session runs */
  answersEnabled: boolean;
  terminal: boolean;
  error: string | null;
}

const TERMINAL_STATUSES = new Set(["optimal", "near_optimal", "collapsed", "failed"]);

export function buildView(
  sessionId: string,
  state: SessionStateDto,
  pending: PendingQueryDto | null,
  error: string | null = null,
): SessionView {
  const terminal = TERMINAL_STATUSES.has(state.status);
  const pendingView =
    pending === null || terminal ? null : buildPending(state.variables, pending);
  return {
    sessionId,
    status: state.status,
    reason: state.reason ?? null,
    lb: state.lb,
    ub: state.ub,
    gap: state.gap,
    epsilon: state.epsilon,
    iteration: state.iteration,
    queriesAsked: state.queries_asked,
    basisSize: state.basis_size,
    learned: [...state.learned_constraints],
    trace: [...state.trace],
    pending: pendingView,
    answersEnabled: pendingView !== null,
    terminal,
    error,
  };
}

function buildPending(variables: string[], pending: PendingQueryDto): PendingView {
  return {
    queryId: pending.query_id,
    kind: pending.kind,
    partial: pending.partial,
    rows: variables.map((variable) => ({
      variable,
      value: variable in pending.bindings ? pending.bindings[variable]! : null,
    })),
  };
}

/** Keep the last good data on a transient failure; only the banner changes. */
export function withError(previous: SessionView, message: string): SessionView {
  return { ...previous, error: message };
}

export function formatBound(value: number | null): string {
  return value === null ? "?" : String(value);
}

export function describeStatus(view: SessionView): string {
  const base = view.status + (view.reason ? ` (${view.reason})` : "");
  if (view.status === "running" && view.pending === null) {
    return `${base} - solver working`;
  }
  return base;
}
