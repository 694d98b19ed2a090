"""Shared fixtures and the independent brute-force oracles.

The enumeration helpers below deliberately avoid the library's evaluate
and search code: they apply raw Python comparisons to every point of the
cartesian product, so they can arbitrate what the solver and the engine
claim.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import pytest

from learnopt import (
    ALL_RELATIONS,
    Assignment,
    Constraint,
    ConstraintNetwork,
    LinearObjective,
    Relation,
    SessionConfig,
    Vocabulary,
)

RAW_OPS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}


def enumerate_complete(voc):
    """Every complete assignment as a plain dict, in lexicographic order."""
    names = list(voc.variables)
    for values in itertools.product(*(voc.domain(v) for v in names)):
        yield dict(zip(names, values))


def holds_raw(constraint, bindings):
    x, y = constraint.scope
    return RAW_OPS[constraint.relation.value](bindings[x], bindings[y])


def brute_solutions(voc, constraints):
    cs = list(constraints)
    return [b for b in enumerate_complete(voc) if all(holds_raw(c, b) for c in cs)]


def brute_optimum(voc, constraints, objective=None):
    """Minimum objective value over all solutions, or None when UNSAT."""
    f = objective if objective is not None else voc.objective
    best = None
    for b in brute_solutions(voc, constraints):
        value = f.constant + sum(coeff * b[v] for v, coeff in f.coefficients.items())
        if best is None or value < best:
            best = value
    return best


@dataclass(frozen=True)
class Chain3:
    """The worked three-variable ordering instance used across the suite."""

    voc: Vocabulary
    target: ConstraintNetwork
    seed: Assignment

    def config(self, epsilon: int = 0, cutoff: float = 60.0) -> SessionConfig:
        return SessionConfig(self.voc, ALL_RELATIONS, self.seed, epsilon, cutoff)


@pytest.fixture
def chain3() -> Chain3:
    names = ("x1", "x2", "x3")
    voc = Vocabulary(
        names,
        {v: (1, 2, 3) for v in names},
        LinearObjective({v: 1 for v in names}),
    )
    target = ConstraintNetwork(
        {
            Constraint(Relation.LT, ("x1", "x2")),
            Constraint(Relation.LT, ("x2", "x3")),
        }
    )
    return Chain3(voc, target, Assignment({"x1": 1, "x2": 2, "x3": 3}))
