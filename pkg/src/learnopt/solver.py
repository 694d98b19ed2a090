"""Finite-domain search: backtracking with forward checking, plus
branch-and-bound minimization of a linear objective.

Decisions follow a fixed rule (smallest current domain first, ties in
vocabulary order, values ascending), so identical inputs always explore
the same tree and return the same answer. A per-call node budget and an
absolute deadline can interrupt search; that surfaces as a BUDGET result,
never as a wrong answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .model import (
    Assignment,
    Constraint,
    ConstraintNetwork,
    LinearObjective,
    Relation,
    Vocabulary,
    complement_of,
    constraint_order_key,
)


class SolveStatus(Enum):
    SAT = "sat"
    UNSAT = "unsat"
    BUDGET = "budget"


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    seconds: float


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    solution: Assignment | None
    stats: SearchStats

    @property
    def is_sat(self) -> bool:
        return self.status is SolveStatus.SAT


@dataclass(frozen=True)
class OptResult:
    """SAT here means a proven optimum; value == objective(solution)."""

    status: SolveStatus
    solution: Assignment | None
    value: int | None
    stats: SearchStats

    @property
    def is_sat(self) -> bool:
        return self.status is SolveStatus.SAT


@dataclass(frozen=True)
class Limits:
    max_nodes: int | None = None
    deadline: float | None = None  # absolute time.monotonic() instant


class _OutOfBudget(Exception):
    pass


class _Search:
    def __init__(self, voc: Vocabulary, constraints: Iterable[Constraint], limits: Limits | None):
        self.voc = voc
        self.n = len(voc.variables)
        self.index = {v: i for i, v in enumerate(voc.variables)}
        self.domains: list[list[int]] = [list(voc.domain(v)) for v in voc.variables]
        self.limits = limits or Limits()
        self.nodes = 0
        # adjacency[i] holds (j, rel) with rel.holds(value_i, value_j);
        # built from a sorted constraint list so node counts are reproducible
        self.adjacent: list[list[tuple[int, Relation]]] = [[] for _ in range(self.n)]
        for c in sorted(set(constraints), key=constraint_order_key):
            i = self.index[c.scope[0]]
            j = self.index[c.scope[1]]
            self.adjacent[i].append((j, c.relation))
            self.adjacent[j].append((i, c.relation.converse))

    def _tick(self) -> None:
        self.nodes += 1
        lim = self.limits
        if lim.max_nodes is not None and self.nodes > lim.max_nodes:
            raise _OutOfBudget
        if lim.deadline is not None and time.monotonic() > lim.deadline:
            raise _OutOfBudget

    def _select(self, assigned: dict[int, int]) -> int:
        best = -1
        best_size = None
        for i in range(self.n):
            if i in assigned:
                continue
            size = len(self.domains[i])
            if best_size is None or size < best_size:
                best, best_size = i, size
        return best

    def _forward(self, i: int, value: int, assigned: dict[int, int]):
        """Prune neighbour domains against i=value; returns (trail, ok)."""
        trail: list[tuple[int, list[int]]] = []
        for j, rel in self.adjacent[i]:
            if j in assigned:
                continue
            old = self.domains[j]
            keep = [w for w in old if rel.holds(value, w)]
            if len(keep) != len(old):
                trail.append((j, old))
                self.domains[j] = keep
                if not keep:
                    return trail, False
        return trail, True

    def _undo(self, trail: list[tuple[int, list[int]]]) -> None:
        for j, old in reversed(trail):
            self.domains[j] = old

    def first_solution(self, assigned: dict[int, int] | None = None) -> dict[int, int] | None:
        assigned = assigned if assigned is not None else {}
        if len(assigned) == self.n:
            return dict(assigned)
        i = self._select(assigned)
        for value in list(self.domains[i]):
            self._tick()
            saved = self.domains[i]
            self.domains[i] = [value]
            assigned[i] = value
            trail, ok = self._forward(i, value, assigned)
            if ok:
                found = self.first_solution(assigned)
                if found is not None:
                    return found
            self._undo(trail)
            del assigned[i]
            self.domains[i] = saved
        return None

    def minimize(self, objective: LinearObjective):
        self.best_value: int | None = None
        self.best: dict[int, int] | None = None
        self._coeffs = [(self.index[v], c) for v, c in sorted(objective.coefficients.items())]
        self._constant = objective.constant
        self._minimize({})
        return self.best, self.best_value

    def _bound(self) -> int:
        # optimistic value from current domains (domains stay ascending)
        total = self._constant
        for i, coeff in self._coeffs:
            dom = self.domains[i]
            if coeff > 0:
                total += coeff * dom[0]
            elif coeff < 0:
                total += coeff * dom[-1]
        return total

    def _minimize(self, assigned: dict[int, int]) -> None:
        if self.best_value is not None and self._bound() >= self.best_value:
            return
        if len(assigned) == self.n:
            value = self._constant + sum(coeff * assigned[i] for i, coeff in self._coeffs)
            if self.best_value is None or value < self.best_value:
                self.best_value = value
                self.best = dict(assigned)
            return
        i = self._select(assigned)
        for value in list(self.domains[i]):
            self._tick()
            saved = self.domains[i]
            self.domains[i] = [value]
            assigned[i] = value
            trail, ok = self._forward(i, value, assigned)
            if ok:
                self._minimize(assigned)
            self._undo(trail)
            del assigned[i]
            self.domains[i] = saved


def _to_assignment(voc: Vocabulary, found: dict[int, int]) -> Assignment:
    return Assignment({voc.variables[i]: v for i, v in sorted(found.items())})


def solve(voc: Vocabulary, network: Iterable[Constraint], limits: Limits | None = None) -> SolveResult:
    """First complete assignment satisfying every constraint, or UNSAT."""
    t0 = time.monotonic()
    search = _Search(voc, network, limits)
    try:
        found = search.first_solution()
    except _OutOfBudget:
        return SolveResult(SolveStatus.BUDGET, None, SearchStats(search.nodes, time.monotonic() - t0))
    stats = SearchStats(search.nodes, time.monotonic() - t0)
    if found is None:
        return SolveResult(SolveStatus.UNSAT, None, stats)
    return SolveResult(SolveStatus.SAT, _to_assignment(voc, found), stats)


def optimize(
    voc: Vocabulary,
    network: Iterable[Constraint],
    objective: LinearObjective | None = None,
    limits: Limits | None = None,
) -> OptResult:
    """Global minimum of the objective over solutions of the network."""
    f = objective if objective is not None else voc.objective
    t0 = time.monotonic()
    search = _Search(voc, network, limits)
    try:
        best, best_value = search.minimize(f)
    except _OutOfBudget:
        return OptResult(SolveStatus.BUDGET, None, None, SearchStats(search.nodes, time.monotonic() - t0))
    stats = SearchStats(search.nodes, time.monotonic() - t0)
    if best is None:
        return OptResult(SolveStatus.UNSAT, None, None, stats)
    return OptResult(SolveStatus.SAT, _to_assignment(voc, best), best_value, stats)


def solve_violating(
    voc: Vocabulary,
    network: Iterable[Constraint],
    constraint: Constraint,
    limits: Limits | None = None,
) -> SolveResult:
    """A complete assignment satisfying the network while violating the
    given constraint; UNSAT exactly when the network entails it.

    The complement of a comparison is again a comparison, so this is plain
    satisfaction on network + complement.
    """
    constraints = set(network)
    if constraint in constraints:
        raise ValueError(f"constraint {constraint} is part of the network it should violate")
    constraints.add(complement_of(constraint))
    return solve(voc, ConstraintNetwork(constraints), limits)
