"""Vocabulary, constraints, assignments: the shared language of a session.

Run:  python3 demos/01_model_basics.py
"""

from learnopt import (
    Assignment,
    Constraint,
    ConstraintNetwork,
    LinearObjective,
    Relation,
    Vocabulary,
    evaluate,
    kappa,
)

# A vocabulary is what the asking side and the answering side agree on:
# variable names, finite integer domains, and the objective to minimize.
voc = Vocabulary(
    variables=("x1", "x2", "x3"),
    domains={"x1": (1, 2, 3), "x2": (1, 2, 3), "x3": (1, 2, 3)},
    objective=LinearObjective({"x1": 1, "x2": 1, "x3": 1}),
)
print("variables:", voc.variables)
print("domain of x2:", voc.domain("x2"))

# Constraints are binary comparisons over ordered pairs. The canonical
# orientation follows the variable order; building "x3 < x1" flips to the
# converse automatically.
a = Constraint(Relation.LT, ("x1", "x2"))
b = voc.oriented(Relation.LT, "x3", "x1")
print("a:", a)
print("b (flipped into canonical form):", b)

# Assignments may be partial. Evaluation is three-valued: a constraint
# whose scope is not fully bound is undetermined, never violated.
full = Assignment({"x1": 2, "x2": 1, "x3": 3})
part = Assignment({"x1": 2})
for e in (full, part):
    print(f"evaluate({a}, {e}) = {evaluate(a, e).value}")

# kappa(N, e) collects the constraints of a network that e violates;
# undetermined ones never show up. This single operation drives both
# basis reduction and query generation.
network = ConstraintNetwork({a, b, Constraint(Relation.NE, ("x2", "x3"))})
print("network (canonical order):", [str(c) for c in network])
print("violated by", dict(full.items()), "->", sorted(str(c) for c in kappa(network, full)))
print("violated by", dict(part.items()), "->", sorted(str(c) for c in kappa(network, part)))

# The objective is exact integer arithmetic on complete assignments.
print("objective at", dict(full.items()), "=", voc.objective_value(full))
