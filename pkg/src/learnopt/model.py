"""Core domain types for constraint learning over finite integer domains.

Everything here is an immutable value: vocabularies, comparison
constraints, constraint networks, assignments, and linear objectives.
Networks use exact set semantics and iterate in a fixed canonical order,
so every consumer of these types is deterministic by construction. All
arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Mapping


class Relation(Enum):
    """A binary integer comparison applied to an ordered pair of values."""

    LT = "<"
    LE = "<="
    EQ = "="
    NE = "!="
    GE = ">="
    GT = ">"

    def holds(self, a: int, b: int) -> bool:
        return _TESTS[self](a, b)

    @property
    def symbol(self) -> str:
        return self.value

    @property
    def converse(self) -> Relation:
        """The relation r' with r'(b, a) <=> r(a, b)."""
        return _CONVERSE[self]

    @property
    def complement(self) -> Relation:
        """The relation r' with r'(a, b) <=> not r(a, b)."""
        return _COMPLEMENT[self]

    @property
    def rank(self) -> int:
        """Position in the canonical relation order (declaration order)."""
        return _RANK[self]

    @classmethod
    def from_symbol(cls, text: str) -> Relation:
        try:
            return _SYMBOLS[text.strip()]
        except KeyError:
            raise ValueError(f"unknown relation symbol: {text!r}") from None


_TESTS: dict[Relation, Callable[[int, int], bool]] = {
    Relation.LT: operator.lt,
    Relation.LE: operator.le,
    Relation.EQ: operator.eq,
    Relation.NE: operator.ne,
    Relation.GE: operator.ge,
    Relation.GT: operator.gt,
}
_CONVERSE = {
    Relation.LT: Relation.GT,
    Relation.LE: Relation.GE,
    Relation.EQ: Relation.EQ,
    Relation.NE: Relation.NE,
    Relation.GE: Relation.LE,
    Relation.GT: Relation.LT,
}
_COMPLEMENT = {
    Relation.LT: Relation.GE,
    Relation.LE: Relation.GT,
    Relation.EQ: Relation.NE,
    Relation.NE: Relation.EQ,
    Relation.GE: Relation.LT,
    Relation.GT: Relation.LE,
}
_SYMBOLS = {r.value: r for r in Relation}
_SYMBOLS["=="] = Relation.EQ
_RANK = {r: i for i, r in enumerate(Relation)}

#: The full comparison language.
ALL_RELATIONS: frozenset[Relation] = frozenset(Relation)


class Evaluation(Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    UNDETERMINED = "undetermined"


class Assignment:
    """A partial or total map from variable names to integer values."""

    __slots__ = ("_bindings",)

    def __init__(self, bindings: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        self._bindings = dict(bindings)

    def get(self, var: str) -> int | None:
        return self._bindings.get(var)

    def __getitem__(self, var: str) -> int:
        return self._bindings[var]

    def __contains__(self, var: str) -> bool:
        return var in self._bindings

    def __len__(self) -> int:
        return len(self._bindings)

    def variables(self) -> frozenset[str]:
        return frozenset(self._bindings)

    def items(self) -> list[tuple[str, int]]:
        """Bindings sorted by variable name (deterministic)."""
        return sorted(self._bindings.items())

    def bindings(self) -> dict[str, int]:
        return dict(self._bindings)

    def restrict(self, variables: Iterable[str]) -> Assignment:
        """The sub-assignment on the given variables (unbound ones skipped)."""
        keep = sorted(v for v in variables if v in self._bindings)
        return Assignment({v: self._bindings[v] for v in keep})

    def is_complete(self, voc: Vocabulary) -> bool:
        return all(v in self._bindings for v in voc.variables)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Assignment):
            return self._bindings == other._bindings
        return NotImplemented

    __hash__ = None  # mutable-mapping payload; never used as a key

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}: {x}" for v, x in self.items())
        return f"Assignment({{{inner}}})"


@dataclass(frozen=True)
class LinearObjective:
    """constant + sum(coefficients[x] * e(x)), always to be minimized."""

    coefficients: Mapping[str, int]
    constant: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", dict(self.coefficients))
        for var, coeff in self.coefficients.items():
            if not isinstance(coeff, int):
                raise ValueError(f"objective coefficient for {var} must be an integer")
        if not isinstance(self.constant, int):
            raise ValueError("objective constant must be an integer")

    def value_of(self, e: Assignment) -> int:
        total = self.constant
        for var, coeff in self.coefficients.items():
            value = e.get(var)
            if value is None:
                raise ValueError(f"objective variable {var} is unbound")
            total += coeff * value
        return total

    def negated(self) -> LinearObjective:
        """Minimizing the negation is maximizing the original."""
        return LinearObjective(
            {var: -coeff for var, coeff in self.coefficients.items()},
            -self.constant,
        )


@dataclass(frozen=True)
class Vocabulary:
    """What learner and user share: variables, finite integer domains, and
    the objective to minimize.
    """

    variables: tuple[str, ...]
    domains: Mapping[str, tuple[int, ...]]
    objective: LinearObjective

    def __post_init__(self) -> None:
        variables = tuple(self.variables)
        if not variables:
            raise ValueError("vocabulary needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        extra = set(self.domains) - set(variables)
        if extra:
            raise ValueError(f"domains given for unknown variables: {sorted(extra)}")
        domains: dict[str, tuple[int, ...]] = {}
        for var in variables:
            if var not in self.domains:
                raise ValueError(f"missing domain for {var}")
            values = tuple(sorted(set(self.domains[var])))
            if not values:
                raise ValueError(f"empty domain for {var}")
            if not all(isinstance(v, int) for v in values):
                raise ValueError(f"domain of {var} must contain integers only")
            domains[var] = values
        unknown = set(self.objective.coefficients) - set(variables)
        if unknown:
            raise ValueError(f"objective references unknown variables: {sorted(unknown)}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "domains", domains)
        object.__setattr__(self, "_position", {v: i for i, v in enumerate(variables)})

    def position(self, var: str) -> int:
        return self._position[var]  # type: ignore[attr-defined]

    def domain(self, var: str) -> tuple[int, ...]:
        return self.domains[var]

    def pairs(self) -> Iterator[tuple[str, str]]:
        """All variable pairs (x_i, x_j) with i < j, in canonical order."""
        n = len(self.variables)
        for i in range(n):
            for j in range(i + 1, n):
                yield self.variables[i], self.variables[j]

    def oriented(self, relation: Relation, x: str, y: str) -> Constraint:
        """Build relation(x, y) in canonical orientation, flipping to the
        converse when the pair is given against the variable order."""
        if self.position(x) < self.position(y):
            return Constraint(relation, (x, y))
        return Constraint(relation.converse, (y, x))

    def constraint_key(self, c: Constraint) -> tuple[int, int, int]:
        """Canonical sort key: scope positions, then relation rank."""
        x, y = c.scope
        return (self.position(x), self.position(y), c.relation.rank)

    def objective_value(self, e: Assignment) -> int:
        return objective_value(self.objective, e, self)


@dataclass(frozen=True)
class Constraint:
    """relation(scope[0], scope[1]) over an ordered pair of distinct variables."""

    relation: Relation
    scope: tuple[str, str]

    def __post_init__(self) -> None:
        x, y = self.scope
        if x == y:
            raise ValueError("constraint scope variables must be distinct")
        object.__setattr__(self, "scope", (x, y))

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(self.scope)

    def __str__(self) -> str:
        x, y = self.scope
        return f"{x} {self.relation.symbol} {y}"


def complement_of(c: Constraint) -> Constraint:
    """The constraint satisfied exactly when c is violated."""
    return Constraint(c.relation.complement, c.scope)


def constraint_order_key(c: Constraint) -> tuple[str, str, int]:
    """Vocabulary-free deterministic order: scope names, then relation."""
    x, y = c.scope
    return (x, y, c.relation.rank)


class ConstraintNetwork:
    """A duplicate-free set of constraints with exact set semantics.

    Iteration is always in the deterministic order of constraint_order_key.
    """

    __slots__ = ("_constraints",)

    def __init__(self, constraints: Iterable[Constraint] = ()):
        self._constraints = frozenset(constraints)

    @property
    def constraints(self) -> frozenset[Constraint]:
        return self._constraints

    def __iter__(self) -> Iterator[Constraint]:
        return iter(sorted(self._constraints, key=constraint_order_key))

    def __len__(self) -> int:
        return len(self._constraints)

    def __contains__(self, c: object) -> bool:
        return c in self._constraints

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ConstraintNetwork):
            return self._constraints == other._constraints
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._constraints)

    def union(self, other: Iterable[Constraint]) -> ConstraintNetwork:
        return ConstraintNetwork(self._constraints | frozenset(other))

    def difference(self, other: Iterable[Constraint]) -> ConstraintNetwork:
        return ConstraintNetwork(self._constraints - frozenset(other))

    def __repr__(self) -> str:
        inner = ", ".join(str(c) for c in self)
        return f"ConstraintNetwork({{{inner}}})"


def evaluate(constraint: Constraint, e: Assignment) -> Evaluation:
    """Truth of a constraint under a possibly partial assignment.

    Undetermined exactly when a scope variable is unbound; a complete
    assignment always yields satisfied or violated.
    """
    a = e.get(constraint.scope[0])
    b = e.get(constraint.scope[1])
    if a is None or b is None:
        return Evaluation.UNDETERMINED
    if constraint.relation.holds(a, b):
        return Evaluation.SATISFIED
    return Evaluation.VIOLATED


def kappa(network: Iterable[Constraint], e: Assignment) -> frozenset[Constraint]:
    """The constraints of the network that e violates.

    Undetermined constraints never count, which is what makes partial
    assignments usable as queries.
    """
    return frozenset(c for c in network if evaluate(c, e) is Evaluation.VIOLATED)


def objective_value(f: LinearObjective, e: Assignment, voc: Vocabulary) -> int:
    """Evaluate f on a complete assignment; a partial one is a caller bug."""
    if not e.is_complete(voc):
        missing = [v for v in voc.variables if v not in e]
        raise ValueError(f"objective evaluated on a partial assignment; unbound: {missing}")
    return f.value_of(e)
