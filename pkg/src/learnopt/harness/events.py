"""The session event log: one JSON object per line.

Event kinds: session_start, query, answer, learned, reduced, bounds,
terminated. Everything except the time fields is deterministic, so a log
can be replayed through a scripted oracle and must come back identical.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from ..engine import BoundTracePoint, SessionObserver, SessionState, run
from ..model import Assignment, Constraint

TIME_FIELDS = frozenset({"elapsed_seconds", "latency_seconds", "wall_seconds"})


def _bindings(e: Assignment) -> dict[str, int]:
    return {var: value for var, value in e.items()}


class EventRecorder(SessionObserver):
    """Collects the canonical event stream of one session."""

    def __init__(self, problem: dict | None = None):
        self.problem = problem
        self.events: list[dict] = []
        self._state: SessionState | None = None

    def on_start(self, state: SessionState) -> None:
        self._state = state
        self.events.append(
            {
                "event": "session_start",
                "problem": self.problem,
                "basis_size": len(state.acq.basis),
            }
        )

    def on_query(self, qid: int, kind: str, e: Assignment, partial: bool) -> None:
        self.events.append(
            {
                "event": "query",
                "id": qid,
                "kind": kind,
                "bindings": _bindings(e),
                "partial": partial,
            }
        )

    def on_answer(self, qid: int, answer: bool) -> None:
        self.events.append(
            {"event": "answer", "id": qid, "answer": "yes" if answer else "no"}
        )

    def on_reduced(self, e: Assignment, removed: frozenset[Constraint]) -> None:
        assert self._state is not None
        self.events.append(
            {
                "event": "reduced",
                "removed": sorted(str(c) for c in removed),
                "basis_size": len(self._state.acq.basis),
            }
        )

    def on_learned(self, constraint: Constraint, dropped: frozenset[Constraint]) -> None:
        assert self._state is not None
        self.events.append(
            {
                "event": "learned",
                "constraint": str(constraint),
                "dropped": sorted(str(c) for c in dropped),
                "basis_size": len(self._state.acq.basis),
                "learned_size": len(self._state.acq.learned),
            }
        )

    def on_bounds(self, point: BoundTracePoint) -> None:
        self.events.append(
            {
                "event": "bounds",
                "iteration": point.iteration,
                "lb": point.lb,
                "ub": point.ub,
                "queries": point.queries,
                "elapsed_seconds": point.elapsed_seconds,
            }
        )

    def on_end(self, state: SessionState) -> None:
        self.events.append(
            {
                "event": "terminated",
                "status": state.status.value,
                "reason": state.termination_reason,
                "lb": state.lb,
                "ub": state.ub,
                "lower_witness": _bindings(state.e_l) if state.e_l is not None else None,
                "upper_witness": _bindings(state.e_u) if state.e_u is not None else None,
                "iterations": state.iteration,
                "queries_total": len(state.queries),
                "queries_by_kind": {k: state.queries_by_kind[k] for k in sorted(state.queries_by_kind)},
                "elapsed_seconds": state.elapsed(),
            }
        )

    def write(self, path: str | Path) -> None:
        write_events(self.events, path)


def write_events(events: Iterable[dict], path: str | Path) -> None:
    lines = [json.dumps(e, sort_keys=False) for e in events]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def read_events(path: str | Path) -> list[dict]:
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line:
            out.append(json.loads(line))
    return out


def strip_time_fields(event: dict) -> dict:
    return {k: v for k, v in event.items() if k not in TIME_FIELDS}


def events_equal(a: Iterable[dict], b: Iterable[dict]) -> bool:
    """Equality of two event streams, timestamps excluded."""
    a_list = [strip_time_fields(e) for e in a]
    b_list = [strip_time_fields(e) for e in b]
    return a_list == b_list


def script_from_log(events: Iterable[dict]) -> list[tuple[Assignment, bool]]:
    """The (question, answer) transcript of a logged session."""
    questions: dict[int, Assignment] = {}
    script: list[tuple[Assignment, bool]] = []
    for event in events:
        if event.get("event") == "query":
            questions[event["id"]] = Assignment(event["bindings"])
        elif event.get("event") == "answer":
            script.append((questions[event["id"]], event["answer"] == "yes"))
    return script


def replay_session(events: list[dict]) -> tuple[SessionState, list[dict]]:
    """Re-run a logged session, feeding back its own answers.

    The wall-clock cutoff is disabled so only the recorded answers drive
    the run; a session that originally stopped on the cutoff will exhaust
    its transcript instead (surfaced as a script error by the oracle).
    """
    from ..oracle import ScriptedOracle
    from .problems import ProblemSpec

    if not events or events[0].get("event") != "session_start":
        raise ValueError("event log does not start with session_start")
    problem = events[0].get("problem")
    if problem is None:
        raise ValueError("event log carries no problem description")
    spec = ProblemSpec.from_dict(problem)
    config = spec.config()
    config = type(config)(
        config.vocabulary,
        config.language,
        config.seed_solution,
        config.epsilon,
        float("inf"),
    )
    oracle = ScriptedOracle(script_from_log(events))
    recorder = EventRecorder(problem)
    state = run(config, oracle, recorder)
    return state, recorder.events
