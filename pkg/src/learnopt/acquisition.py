"""Active constraint learning against a yes/no membership source.

The candidate basis holds every language constraint that accepts the
trusted seed solution. Positive examples prune the candidates they
contradict. A negative example is first localized to the scope of one
violated hidden constraint by dichotomic partial queries, then candidate
elimination on that scope pins down a constraint to promote into the
learned network. Candidates that no admissible query can tell apart are
interchangeable and leave the basis together.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .model import (
    Assignment,
    Constraint,
    ConstraintNetwork,
    Evaluation,
    Relation,
    Vocabulary,
    evaluate,
    kappa,
)

# ask(assignment, kind) -> True for yes; kind tags the query's origin so the
# session can itemize query counts.
AskFn = Callable[[Assignment, str], bool]
# optional hook fired when a positive answer removes basis candidates
ReduceHook = Callable[[Assignment, frozenset[Constraint]], None]

KIND_FINDSCOPE = "findscope"
KIND_FINDC = "findc"


@dataclass
class AcquisitionState:
    """Mutable (learned, basis) pair confined to one session."""

    vocabulary: Vocabulary
    basis: ConstraintNetwork
    learned: ConstraintNetwork = field(default_factory=ConstraintNetwork)

    def combined(self) -> ConstraintNetwork:
        return self.learned.union(self.basis)


@dataclass(frozen=True)
class LearnOutcome:
    """Result of learning from one negative example.

    constraint is None on collapse: no candidate was left, which
    contradicts the assumption that the hidden network lies in the basis
    (or that answers are truthful).
    """

    constraint: Constraint | None
    eliminated: frozenset[Constraint] = frozenset()

    @property
    def collapsed(self) -> bool:
        return self.constraint is None

    @classmethod
    def collapse(cls) -> LearnOutcome:
        return cls(None)


def create_basis(voc: Vocabulary, language: Iterable[Relation], seed: Assignment) -> ConstraintNetwork:
    """All language constraints over variable pairs that accept the seed.

    The seed is trusted feasible, so every hidden constraint expressible
    in the language survives this filter and the basis itself accepts the
    seed by construction.
    """
    if not seed.is_complete(voc):
        raise ValueError("seed solution must bind every variable")
    retained = set()
    for x, y in voc.pairs():
        for rel in language:
            c = Constraint(rel, (x, y))
            if evaluate(c, seed) is Evaluation.SATISFIED:
                retained.add(c)
    return ConstraintNetwork(retained)


def reduce(state: AcquisitionState, e: Assignment) -> frozenset[Constraint]:
    """Drop every basis candidate the positive example e contradicts.

    Returns the removed set so callers can log it; the learned network is
    untouched.
    """
    removed = kappa(state.basis, e)
    if removed:
        state.basis = state.basis.difference(removed)
    return removed


def find_scope(
    e: Assignment,
    R: frozenset[str],
    Y: Sequence[str],
    ask_flag: bool,
    ask: AskFn,
    state: AcquisitionState,
    on_reduce: ReduceHook | None = None,
) -> frozenset[str]:
    """Locate the scope of one hidden constraint violated by e.

    Splits the candidate variables Y in half and uses partial queries on
    the fixed part R to decide where the violated scope lies. A positive
    sub-query doubles as a global basis reduction (free information); a
    negative one means the scope sits entirely inside R, so no variable of
    Y is needed. The ask is skipped when e restricted to R violates no
    basis candidate: under basis soundness the answer is then a foregone
    yes with nothing to reduce.
    """
    if ask_flag:
        e_r = e.restrict(R)
        if kappa(state.basis, e_r):
            if ask(e_r, KIND_FINDSCOPE):
                removed = reduce(state, e_r)
                if on_reduce is not None and removed:
                    on_reduce(e_r, removed)
            else:
                return frozenset()
    if not Y:
        return frozenset()
    if len(Y) == 1:
        return frozenset(Y)
    half = len(Y) // 2
    y1, y2 = list(Y[:half]), list(Y[half:])
    s1 = find_scope(e, R | frozenset(y1), y2, True, ask, state, on_reduce)
    s2 = find_scope(e, R | s1, y1, bool(s1), ask, state, on_reduce)
    return s1 | s2


def _splitting_probe(
    voc: Vocabulary,
    x: str,
    y: str,
    learned_local: list[Constraint],
    delta: list[Constraint],
) -> tuple[Assignment | None, frozenset[Constraint]]:
    """First scope assignment (ascending value order) that is admissible
    under the learned network and violates a proper nonempty subset of the
    candidates."""
    for vx in voc.domain(x):
        for vy in voc.domain(y):
            probe = Assignment({x: vx, y: vy})
            if any(evaluate(c, probe) is Evaluation.VIOLATED for c in learned_local):
                continue
            violated = kappa(delta, probe)
            if 0 < len(violated) < len(delta):
                return probe, violated
    return None, frozenset()


def find_c(
    e: Assignment,
    scope: frozenset[str],
    ask: AskFn,
    state: AcquisitionState,
    on_reduce: ReduceHook | None = None,
) -> LearnOutcome:
    """Candidate elimination on one scope.

    Starts from the basis candidates on the scope that e violates. Each
    splitting query either clears the violated side (positive answer, a
    reduction) or narrows the candidates to it (negative answer). When no
    admissible assignment can split the survivors they are equivalent
    under the learned network: the first in canonical order is promoted
    and the rest leave the basis with it.
    """
    voc = state.vocabulary
    names = sorted(scope, key=voc.position)
    if len(names) != 2:
        # binary language: any other scope size contradicts basis soundness
        return LearnOutcome.collapse()
    x, y = names
    scope_set = frozenset(names)
    delta = [
        c
        for c in state.basis
        if c.variables == scope_set and evaluate(c, e) is Evaluation.VIOLATED
    ]
    delta.sort(key=voc.constraint_key)
    learned_local = [c for c in state.learned if c.variables <= scope_set]
    while True:
        if not delta:
            return LearnOutcome.collapse()
        probe, violated = _splitting_probe(voc, x, y, learned_local, delta)
        if probe is None:
            chosen = delta[0]
            dropped = frozenset(delta[1:])
            state.learned = state.learned.union([chosen])
            state.basis = state.basis.difference(delta)
            return LearnOutcome(chosen, dropped)
        if ask(probe, KIND_FINDC):
            # feasible example: the candidates it violates cannot be hidden
            delta = [c for c in delta if c not in violated]
            state.basis = state.basis.difference(violated)
            if on_reduce is not None:
                on_reduce(probe, violated)
        else:
            delta = [c for c in delta if c in violated]


def learn(
    state: AcquisitionState,
    e: Assignment,
    ask: AskFn,
    on_reduce: ReduceHook | None = None,
) -> LearnOutcome:
    """One acquisition round on a negative example: find a violated scope,
    then identify a constraint on it. Exactly one constraint is learned
    per negative example; other violations stay for later rounds.
    """
    voc = state.vocabulary
    bound = [v for v in voc.variables if v in e]
    scope = find_scope(e, frozenset(), bound, False, ask, state, on_reduce)
    if not scope:
        return LearnOutcome.collapse()
    return find_c(e, scope, ask, state, on_reduce)
