"""The interactive optimization loop.

Each iteration generates one informative membership query (it satisfies
everything learned and violates at least one basis candidate), feeds the
answer to the learner, and recomputes two optima: the learned network
alone gives the lower bound, learned plus basis gives the upper bound.
The hidden optimum is sandwiched between them, so the session can stop
at a proven gap, at a user-confirmed lower witness, or at the time
budget with a feasible near-optimal solution in hand.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable

from .acquisition import AcquisitionState, LearnOutcome, create_basis, learn, reduce
from .model import (
    Assignment,
    Constraint,
    ConstraintNetwork,
    Relation,
    Vocabulary,
    kappa,
)
from .oracle import AskTimeout, Oracle
from .solver import Limits, SolveStatus, optimize, solve_violating

KIND_TOPLEVEL = "toplevel"
KIND_BOUND_CHECK = "bound_check"


class Status(Enum):
    RUNNING = "running"
    OPTIMAL = "optimal"
    NEAR_OPTIMAL = "near_optimal"
    COLLAPSED = "collapsed"


class SessionError(RuntimeError):
    pass


class InternalInvariantError(SessionError):
    """The engine's own bookkeeping broke; this is a bug, not user input."""


class CutoffInterrupt(Exception):
    """A solver call ran into the session deadline mid-iteration."""


@dataclass(frozen=True)
class SessionConfig:
    vocabulary: Vocabulary
    language: frozenset[Relation]
    seed_solution: Assignment
    epsilon: int = 0
    cutoff_seconds: float = 3600.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "language", frozenset(self.language))
        if not self.language:
            raise ValueError("language must contain at least one relation")
        voc = self.vocabulary
        seed = self.seed_solution
        if not seed.is_complete(voc):
            raise ValueError("seed solution must bind every variable")
        for var, value in seed.items():
            if var not in voc.domains:
                raise ValueError(f"seed binds unknown variable {var}")
            if value not in voc.domain(var):
                raise ValueError(f"seed value {value} outside the domain of {var}")
        if not isinstance(self.epsilon, int) or self.epsilon < 0:
            raise ValueError("epsilon must be a non-negative integer")
        if self.cutoff_seconds < 0:
            raise ValueError("cutoff must be non-negative")


@dataclass(frozen=True)
class BoundTracePoint:
    iteration: int
    lb: int
    ub: int
    queries: int
    elapsed_seconds: float


@dataclass(frozen=True)
class QueryRecord:
    qid: int
    kind: str
    assignment: Assignment
    partial: bool
    answer: bool


class SessionObserver:
    """Override any subset; the engine calls these as the session advances."""

    def on_start(self, state: SessionState) -> None: ...

    def on_query(self, qid: int, kind: str, e: Assignment, partial: bool) -> None: ...

    def on_answer(self, qid: int, answer: bool) -> None: ...

    def on_reduced(self, e: Assignment, removed: frozenset[Constraint]) -> None: ...

    def on_learned(self, constraint: Constraint, dropped: frozenset[Constraint]) -> None: ...

    def on_bounds(self, point: BoundTracePoint) -> None: ...

    def on_end(self, state: SessionState) -> None: ...


@dataclass
class SessionState:
    config: SessionConfig
    acq: AcquisitionState
    lb: int | None = None
    ub: int | None = None
    e_l: Assignment | None = None
    e_u: Assignment | None = None
    iteration: int = 0
    status: Status = Status.RUNNING
    termination_reason: str | None = None
    trace: list[BoundTracePoint] = field(default_factory=list)
    queries: list[QueryRecord] = field(default_factory=list)
    queries_by_kind: dict[str, int] = field(default_factory=dict)
    rotation_anchor: Constraint | None = None
    started: float = field(default_factory=time.monotonic)
    deadline: float = float("inf")

    @property
    def gap(self) -> int:
        if self.lb is None or self.ub is None:
            raise SessionError("bounds not computed yet")
        return self.ub - self.lb

    def elapsed(self) -> float:
        return time.monotonic() - self.started


def _limits(state: SessionState) -> Limits:
    if state.deadline == float("inf"):
        return Limits()
    return Limits(deadline=state.deadline)


def _recompute(state: SessionState) -> None:
    """Refresh (e_l, lb) from the learned network and (e_u, ub) from
    learned plus basis. Both networks accept the seed, so UNSAT here is a
    broken invariant, not a reachable outcome."""
    voc = state.config.vocabulary
    limits = _limits(state)
    low = optimize(voc, state.acq.learned, limits=limits)
    high = optimize(voc, state.acq.combined(), limits=limits)
    if low.status is SolveStatus.BUDGET or high.status is SolveStatus.BUDGET:
        raise CutoffInterrupt
    if not low.is_sat or not high.is_sat:
        raise InternalInvariantError("learned or combined network became infeasible")
    assert low.value is not None and high.value is not None
    if low.value > high.value:
        raise InternalInvariantError("lower bound exceeded upper bound")
    if state.lb is not None and low.value < state.lb:
        raise InternalInvariantError("lower bound decreased")
    if state.ub is not None and high.value > state.ub:
        raise InternalInvariantError("upper bound increased")
    state.e_l, state.lb = low.solution, low.value
    state.e_u, state.ub = high.solution, high.value


def _append_trace(state: SessionState, observer: SessionObserver | None) -> None:
    assert state.lb is not None and state.ub is not None
    point = BoundTracePoint(
        iteration=state.iteration,
        lb=state.lb,
        ub=state.ub,
        queries=len(state.queries),
        elapsed_seconds=state.elapsed(),
    )
    state.trace.append(point)
    if observer is not None:
        observer.on_bounds(point)


def _finish(state: SessionState, status: Status, reason: str, observer: SessionObserver | None) -> None:
    state.status = status
    state.termination_reason = reason
    if observer is not None:
        observer.on_end(state)


def _ask(
    state: SessionState,
    oracle: Oracle,
    observer: SessionObserver | None,
    e: Assignment,
    kind: str,
) -> bool:
    qid = len(state.queries) + 1
    partial = not e.is_complete(state.config.vocabulary)
    if observer is not None:
        observer.on_query(qid, kind, e, partial)
    answer = bool(oracle.ask(e))
    state.queries.append(QueryRecord(qid, kind, e, partial, answer))
    state.queries_by_kind[kind] = state.queries_by_kind.get(kind, 0) + 1
    if observer is not None:
        observer.on_answer(qid, answer)
    return answer


def init_session(config: SessionConfig, observer: SessionObserver | None = None) -> SessionState:
    """Build the basis from the seed, compute the initial bounds, and
    settle immediately when they already meet the precision target."""
    voc = config.vocabulary
    basis = create_basis(voc, config.language, config.seed_solution)
    if kappa(basis, config.seed_solution):
        raise InternalInvariantError("seed solution violates its own basis")
    state = SessionState(config=config, acq=AcquisitionState(voc, basis))
    # the time budget governs the query loop; initial bounds always complete
    _recompute(state)
    state.deadline = state.started + config.cutoff_seconds
    if observer is not None:
        observer.on_start(state)
    _append_trace(state, observer)
    if state.gap <= config.epsilon:
        _finish(state, Status.OPTIMAL, "gap", observer)
    return state


def generate_query(state: SessionState) -> Assignment | None:
    """A complete assignment satisfying the learned network and violating
    at least one basis candidate, so either answer changes the state.

    Candidates are tried round-robin starting after the previously
    targeted one; None means no candidate can be violated anymore, i.e.
    the learned network already entails the whole basis.
    """
    voc = state.config.vocabulary
    limits = _limits(state)
    candidates = sorted(state.acq.basis, key=voc.constraint_key)
    if state.rotation_anchor is not None:
        anchor_key = voc.constraint_key(state.rotation_anchor)
        start = 0
        for idx, c in enumerate(candidates):
            if voc.constraint_key(c) > anchor_key:
                start = idx
                break
        candidates = candidates[start:] + candidates[:start]
    for c in candidates:
        result = solve_violating(voc, state.acq.learned, c, limits)
        if result.status is SolveStatus.BUDGET:
            raise CutoffInterrupt
        if result.is_sat:
            state.rotation_anchor = c
            assert result.solution is not None
            return result.solution
    return None


def step(state: SessionState, oracle: Oracle, observer: SessionObserver | None = None) -> SessionState:
    """One full iteration: query, answer, update networks, recompute the
    bounds, and test the three answer-driven termination causes."""
    if state.status is not Status.RUNNING:
        raise SessionError(f"cannot step a session in status {state.status.value}")
    state.iteration += 1
    e = generate_query(state)
    if e is None:
        # nothing informative left: the two networks have the same solutions
        _recompute(state)
        if state.lb != state.ub:
            raise InternalInvariantError("bounds differ although the basis is entailed")
        _append_trace(state, observer)
        _finish(state, Status.OPTIMAL, "converged", observer)
        return state

    asker = lambda a, kind: _ask(state, oracle, observer, a, kind)  # noqa: E731
    on_reduce = observer.on_reduced if observer is not None else None

    if _ask(state, oracle, observer, e, KIND_TOPLEVEL):
        removed = reduce(state.acq, e)
        if observer is not None:
            observer.on_reduced(e, removed)
    else:
        outcome = learn(state.acq, e, asker, on_reduce)
        if outcome.collapsed:
            _append_trace(state, observer)
            _finish(state, Status.COLLAPSED, "collapse", observer)
            return state
        assert outcome.constraint is not None
        if observer is not None:
            observer.on_learned(outcome.constraint, outcome.eliminated)

    _recompute(state)

    if state.gap <= state.config.epsilon:
        _append_trace(state, observer)
        _finish(state, Status.OPTIMAL, "gap", observer)
        return state

    assert state.e_l is not None
    if _ask(state, oracle, observer, state.e_l, KIND_BOUND_CHECK):
        # the lower witness is user-certified feasible at a valid lower
        # bound, hence optimal; it becomes the upper witness as well
        state.ub = state.lb
        state.e_u = state.e_l
        _append_trace(state, observer)
        _finish(state, Status.OPTIMAL, "positive_lower_witness", observer)
        return state

    # the lower witness was rejected: a paid-for negative example, feed it
    # to the learner instead of discarding it
    outcome = learn(state.acq, state.e_l, asker, on_reduce)
    if outcome.collapsed:
        _append_trace(state, observer)
        _finish(state, Status.COLLAPSED, "collapse", observer)
        return state
    assert outcome.constraint is not None
    if observer is not None:
        observer.on_learned(outcome.constraint, outcome.eliminated)
    _append_trace(state, observer)
    return state


def run(config: SessionConfig, oracle: Oracle, observer: SessionObserver | None = None) -> SessionState:
    """Iterate until a termination cause fires or the time budget runs
    out; on cutoff the last consistent bounds and witnesses are returned
    as a near-optimal result."""
    state = init_session(config, observer)
    try:
        while state.status is Status.RUNNING and time.monotonic() < state.deadline:
            step(state, oracle, observer)
    except (CutoffInterrupt, AskTimeout):
        pass
    if state.status is Status.RUNNING:
        _finish(state, Status.NEAR_OPTIMAL, "cutoff", observer)
    return state
