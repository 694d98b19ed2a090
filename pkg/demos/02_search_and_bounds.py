"""Finite-domain search: satisfaction, optimization, and targeted
violation (the query-generation primitive).

Run:  python3 demos/02_search_and_bounds.py
"""

from learnopt import (
    Constraint,
    ConstraintNetwork,
    Limits,
    LinearObjective,
    Relation,
    Vocabulary,
    optimize,
    solve,
    solve_violating,
)

voc = Vocabulary(
    variables=("x1", "x2", "x3"),
    domains={v: (1, 2, 3) for v in ("x1", "x2", "x3")},
    objective=LinearObjective({"x1": 1, "x2": 1, "x3": 1}),
)
chain = ConstraintNetwork(
    {Constraint(Relation.LT, ("x1", "x2")), Constraint(Relation.LT, ("x2", "x3"))}
)

# First solution by backtracking with forward checking. The search order
# is fixed (smallest domain, then variable order, values ascending), so
# the same input always produces the same solution.
res = solve(voc, chain)
print("solve:", dict(res.solution.items()), f"({res.stats.nodes} nodes)")

# Branch-and-bound minimization; the bound comes from domain extremes.
opt = optimize(voc, chain)
print("optimize:", dict(opt.solution.items()), "value", opt.value)

# The learning loop needs assignments that satisfy one network while
# violating a chosen constraint. The complement of a comparison is again
# a comparison, so this reduces to plain satisfaction.
probe = solve_violating(voc, ConstraintNetwork({Constraint(Relation.LT, ("x1", "x2"))}),
                        Constraint(Relation.LT, ("x2", "x3")))
print("satisfies x1<x2, violates x2<x3:", dict(probe.solution.items()))

# Entailed constraints cannot be violated: that is how the engine detects
# convergence without asking anything.
entailed = solve_violating(voc, chain, Constraint(Relation.LE, ("x1", "x3")))
print("violate x1<=x3 under the chain:", entailed.status.value)

# A node budget (or deadline) interrupts search without a wrong answer.
big = Vocabulary(
    tuple(f"y{i}" for i in range(8)),
    {f"y{i}": tuple(range(8)) for i in range(8)},
    LinearObjective({f"y{i}": 1 for i in range(8)}),
)
pairs = list(big.pairs())
alldiff = ConstraintNetwork({Constraint(Relation.NE, p) for p in pairs})
cut = optimize(big, alldiff, limits=Limits(max_nodes=50))
print("budgeted search:", cut.status.value, f"after {cut.stats.nodes} nodes")
