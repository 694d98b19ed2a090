from __future__ import annotations

import math
import random

import pytest

from learnopt import (
    ALL_RELATIONS,
    AcquisitionState,
    Assignment,
    Constraint,
    ConstraintNetwork,
    Evaluation,
    HiddenNetworkOracle,
    LinearObjective,
    Relation,
    Vocabulary,
    create_basis,
    evaluate,
    find_c,
    find_scope,
    kappa,
    learn,
    reduce,
)

from conftest import brute_solutions, enumerate_complete, holds_raw


def c(rel, x, y):
    return Constraint(rel, (x, y))


class CountingAsker:
    """Adapts an oracle to the (assignment, kind) ask signature and tallies."""

    def __init__(self, oracle):
        self.oracle = oracle
        self.by_kind: dict[str, int] = {}
        self.transcript: list[tuple[Assignment, bool]] = []

    def __call__(self, e, kind):
        answer = self.oracle.ask(e)
        self.by_kind[kind] = self.by_kind.get(kind, 0) + 1
        self.transcript.append((e, answer))
        return answer


class AlwaysYes:
    def ask(self, e):
        return True


@pytest.fixture
def chain3_state(chain3):
    basis = create_basis(chain3.voc, ALL_RELATIONS, chain3.seed)
    return AcquisitionState(chain3.voc, basis)


# --- create_basis -------------------------------------------------------


def test_create_basis_chain3_has_nine_candidates(chain3):
    basis = create_basis(chain3.voc, ALL_RELATIONS, chain3.seed)
    expected = {
        c(rel, x, y)
        for x, y in chain3.voc.pairs()
        for rel in (Relation.LT, Relation.LE, Relation.NE)
    }
    assert basis.constraints == frozenset(expected)
    assert len(basis) == 9
    assert kappa(basis, chain3.seed) == frozenset()


def test_create_basis_on_equal_pair():
    voc = Vocabulary(("x1", "x2"), {"x1": (1, 2), "x2": (1, 2)}, LinearObjective({}))
    basis = create_basis(voc, ALL_RELATIONS, Assignment({"x1": 2, "x2": 2}))
    assert basis.constraints == frozenset(
        {c(Relation.LE, "x1", "x2"), c(Relation.EQ, "x1", "x2"), c(Relation.GE, "x1", "x2")}
    )


def test_create_basis_single_variable_is_empty():
    voc = Vocabulary(("x1",), {"x1": (1, 2)}, LinearObjective({}))
    assert len(create_basis(voc, ALL_RELATIONS, Assignment({"x1": 1}))) == 0


def test_create_basis_rejects_partial_seed(chain3):
    with pytest.raises(ValueError, match="every variable"):
        create_basis(chain3.voc, ALL_RELATIONS, Assignment({"x1": 1}))


def test_create_basis_respects_language_subset(chain3):
    basis = create_basis(chain3.voc, {Relation.LE, Relation.GT}, chain3.seed)
    assert basis.constraints == frozenset(c(Relation.LE, x, y) for x, y in chain3.voc.pairs())


# --- reduce -------------------------------------------------------------


def test_reduce_removes_exactly_the_violated_candidates(chain3_state):
    removed = reduce(chain3_state, Assignment({"x1": 1, "x2": 1, "x3": 2}))
    assert removed == frozenset({c(Relation.LT, "x1", "x2"), c(Relation.NE, "x1", "x2")})
    assert len(chain3_state.basis) == 7
    assert len(chain3_state.learned) == 0


def test_reduce_with_partial_example_touches_only_bound_scopes(chain3_state):
    removed = reduce(chain3_state, Assignment({"x1": 1, "x2": 2}))
    assert removed == frozenset()
    assert len(chain3_state.basis) == 9


def test_reduce_noop_when_nothing_violated(chain3_state):
    before = chain3_state.basis
    assert reduce(chain3_state, Assignment({"x1": 1, "x2": 2, "x3": 3})) == frozenset()
    assert chain3_state.basis == before


# --- find_scope ---------------------------------------------------------


def test_find_scope_locates_violated_pair(chain3, chain3_state):
    asker = CountingAsker(HiddenNetworkOracle(chain3.target))
    e = Assignment({"x1": 2, "x2": 1, "x3": 3})  # violates x1 < x2 only
    scope = find_scope(e, frozenset(), list(chain3.voc.variables), False, asker, chain3_state)
    assert scope == frozenset({"x1", "x2"})
    assert asker.by_kind == {"findscope": 1}


def test_find_scope_base_case_returns_candidates():
    voc = Vocabulary(("x1", "x2"), {"x1": (1,), "x2": (1,)}, LinearObjective({}))
    state = AcquisitionState(voc, ConstraintNetwork())
    got = find_scope(Assignment({"x1": 1}), frozenset(), ["x2"], False, None, state)
    assert got == frozenset({"x2"})


def test_find_scope_positive_subqueries_reduce_globally(chain3, chain3_state):
    # e violates only the (x2, x3) target; the positive sub-query on
    # {x1, x3} prunes that pair's violated candidates as a side effect
    asker = CountingAsker(HiddenNetworkOracle(chain3.target))
    e = Assignment({"x1": 2, "x2": 3, "x3": 1})
    scope = find_scope(e, frozenset(), list(chain3.voc.variables), False, asker, chain3_state)
    assert scope == frozenset({"x2", "x3"})
    assert c(Relation.LT, "x1", "x3") not in chain3_state.basis
    assert c(Relation.LE, "x1", "x3") not in chain3_state.basis
    assert c(Relation.NE, "x1", "x3") in chain3_state.basis


def test_find_scope_single_violation_query_bound():
    # dichotomic localization: sub-queries stay logarithmic in n for a
    # negative example violating exactly one binary constraint
    rng = random.Random(13)
    checked = 0
    for n in range(3, 9):
        names = tuple(f"x{i}" for i in range(1, n + 1))
        voc = Vocabulary(names, {v: (1, 2, 3) for v in names}, LinearObjective({}))
        seed = Assignment({v: ((i + 1) % 3) + 1 for i, v in enumerate(names)})
        for _ in range(10):
            x, y = rng.choice(list(voc.pairs()))
            hidden = voc.oriented(rng.choice(list(Relation)), x, y)
            if evaluate(hidden, seed) is not Evaluation.SATISFIED:
                continue
            violating = [b for b in enumerate_complete(voc) if not holds_raw(hidden, b)]
            if not violating:
                continue
            e = Assignment(rng.choice(violating))
            state = AcquisitionState(voc, create_basis(voc, ALL_RELATIONS, seed))
            asker = CountingAsker(HiddenNetworkOracle(ConstraintNetwork({hidden})))
            scope = find_scope(e, frozenset(), list(names), False, asker, state)
            assert scope == hidden.variables
            bound = 2 * (math.ceil(math.log2(n)) + 1) + 2
            assert asker.by_kind.get("findscope", 0) <= bound
            checked += 1
    assert checked >= 20


# --- find_c -------------------------------------------------------------


def test_find_c_single_candidate_needs_no_queries(chain3):
    voc = chain3.voc
    state = AcquisitionState(
        voc, ConstraintNetwork({c(Relation.LT, "x1", "x2"), c(Relation.LE, "x2", "x3")})
    )
    boom = CountingAsker(None)  # would fail on use

    e = Assignment({"x1": 2, "x2": 1, "x3": 3})
    outcome = find_c(e, frozenset({"x1", "x2"}), boom, state)
    assert not outcome.collapsed
    assert outcome.constraint == c(Relation.LT, "x1", "x2")
    assert outcome.eliminated == frozenset()
    assert c(Relation.LT, "x1", "x2") in state.learned
    assert c(Relation.LT, "x1", "x2") not in state.basis
    assert boom.by_kind == {}


def test_find_c_empty_candidates_collapse(chain3, chain3_state):
    e = Assignment({"x1": 1, "x2": 2, "x3": 3})  # violates nothing
    outcome = find_c(e, frozenset({"x1", "x2"}), None, chain3_state)
    assert outcome.collapsed


def test_find_c_non_binary_scope_collapses(chain3, chain3_state):
    e = Assignment({"x1": 1, "x2": 1, "x3": 1})
    assert find_c(e, frozenset({"x1", "x2", "x3"}), None, chain3_state).collapsed
    assert find_c(e, frozenset({"x1"}), None, chain3_state).collapsed


def test_find_c_elimination_matches_hidden_constraint(chain3, chain3_state):
    asker = CountingAsker(HiddenNetworkOracle(chain3.target))
    e = Assignment({"x1": 2, "x2": 1, "x3": 3})
    outcome = find_c(e, frozenset({"x1", "x2"}), asker, chain3_state)
    assert not outcome.collapsed
    learned = outcome.constraint
    # the survivor must behave exactly like the hidden x1 < x2 on the pair
    hidden = c(Relation.LT, "x1", "x2")
    for a in chain3.voc.domain("x1"):
        for b in chain3.voc.domain("x2"):
            probe = Assignment({"x1": a, "x2": b})
            assert evaluate(learned, probe) == evaluate(hidden, probe)


# --- learn --------------------------------------------------------------


def test_learn_first_negative_example(chain3, chain3_state):
    asker = CountingAsker(HiddenNetworkOracle(chain3.target))
    outcome = learn(chain3_state, Assignment({"x1": 1, "x2": 1, "x3": 1}), asker)
    assert not outcome.collapsed
    assert outcome.constraint == c(Relation.LT, "x1", "x2")
    assert len(chain3_state.learned) == 1
    assert len(chain3_state.basis) < 9


def test_learn_acquires_one_constraint_per_negative(chain3, chain3_state):
    asker = CountingAsker(HiddenNetworkOracle(chain3.target))
    e = Assignment({"x1": 2, "x2": 1, "x3": 1})  # violates both targets
    outcome = learn(chain3_state, e, asker)
    assert not outcome.collapsed
    assert outcome.constraint == c(Relation.LT, "x1", "x2")
    assert len(chain3_state.learned) == 1
    # the other target is still waiting in the basis
    assert c(Relation.LT, "x2", "x3") in chain3_state.basis


def test_learn_collapse_on_inconsistent_answers(chain3, chain3_state):
    # "no" at the top with "yes" to every pair restriction cannot happen
    # under any binary hidden network inside the basis
    asker = CountingAsker(AlwaysYes())
    outcome = learn(chain3_state, Assignment({"x1": 1, "x2": 1, "x3": 1}), asker)
    assert outcome.collapsed


def test_learn_keeps_seed_accepted(chain3, chain3_state):
    asker = CountingAsker(HiddenNetworkOracle(chain3.target))
    learn(chain3_state, Assignment({"x1": 1, "x2": 1, "x3": 1}), asker)
    combined = chain3_state.combined()
    assert kappa(combined, chain3.seed) == frozenset()


# --- session-long invariants against random truthful oracles ------------


def random_acquisition_session(seed_value):
    rng = random.Random(seed_value)
    n = rng.randint(2, 5)
    d = rng.randint(2, 4)
    names = tuple(f"x{i}" for i in range(1, n + 1))
    voc = Vocabulary(names, {v: tuple(range(1, d + 1)) for v in names}, LinearObjective({}))
    # normalized hidden network: at most one relation per pair, seed-feasible
    solutions = None
    while solutions is None:
        target = set()
        for pair in voc.pairs():
            if rng.random() < 0.4:
                target.add(Constraint(rng.choice(list(Relation)), pair))
        found = brute_solutions(voc, target)
        if found:
            solutions = found
    seed = Assignment(rng.choice(solutions))
    return rng, voc, ConstraintNetwork(target), seed


@pytest.mark.parametrize("seed_value", range(12))
def test_invariants_across_random_learning_runs(seed_value):
    rng, voc, target, seed = random_acquisition_session(seed_value)
    state = AcquisitionState(voc, create_basis(voc, ALL_RELATIONS, seed))
    oracle = HiddenNetworkOracle(target)
    asker = CountingAsker(oracle)

    assert all(k in state.basis for k in target)  # T subset of initial basis

    for _ in range(30):
        prev_learned = state.learned
        prev_union = state.combined()
        # feed a random example; positives reduce, negatives learn
        e = Assignment(rng.choice(brute_solutions(voc, state.learned)))
        if oracle.ask(e):
            reduce(state, e)
        else:
            mark = len(asker.transcript)
            outcome = learn(state, e, asker)
            assert not outcome.collapsed
            # the new constraint was rejected by a negative example seen
            # during this very acquisition round
            negatives = [q for q, ans in asker.transcript[mark:] if not ans] + [e]
            assert any(
                evaluate(outcome.constraint, q) is Evaluation.VIOLATED for q in negatives
            )
        # monotonicity: learned grows, learned+basis shrinks
        assert prev_learned.constraints <= state.learned.constraints
        assert state.combined().constraints <= prev_union.constraints
        # the seed stays accepted by everything retained
        assert kappa(state.combined(), seed) == frozenset()
        # uniform domains: the hidden network itself is never dropped
        assert all(k in state.combined() for k in target)
