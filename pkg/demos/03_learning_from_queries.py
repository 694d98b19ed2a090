"""Inside one learning round: basis construction, scope localization,
candidate elimination.

Run:  python3 demos/03_learning_from_queries.py
"""

from learnopt import (
    ALL_RELATIONS,
    AcquisitionState,
    Assignment,
    Constraint,
    ConstraintNetwork,
    HiddenNetworkOracle,
    LinearObjective,
    Relation,
    Vocabulary,
    create_basis,
    learn,
)

voc = Vocabulary(
    variables=("x1", "x2", "x3"),
    domains={v: (1, 2, 3) for v in ("x1", "x2", "x3")},
    objective=LinearObjective({v: 1 for v in ("x1", "x2", "x3")}),
)

# The hidden network is what the answering side knows and we do not.
hidden = ConstraintNetwork(
    {Constraint(Relation.LT, ("x1", "x2")), Constraint(Relation.LT, ("x2", "x3"))}
)
oracle = HiddenNetworkOracle(hidden)

# One trusted feasible solution seeds the basis: every relation from the
# language that accepts it, over every variable pair. The hidden network
# is guaranteed to be inside.
seed = Assignment({"x1": 1, "x2": 2, "x3": 3})
basis = create_basis(voc, ALL_RELATIONS, seed)
print(f"basis from seed {dict(seed.items())} ({len(basis)} candidates):")
for c in basis:
    print("  ", c)

state = AcquisitionState(voc, basis)


def chatty_ask(e, kind):
    answer = oracle.ask(e)
    print(f"  [{kind}] is {dict(e.items())} feasible? -> {'yes' if answer else 'no'}")
    return answer


# A negative example: (1,1,1) violates the hidden x1 < x2. The learner
# first halves its way to the violated scope with partial queries, then
# eliminates candidates on that scope until one remains.
negative = Assignment({"x1": 1, "x2": 1, "x3": 1})
print(f"\nlearning from the negative example {dict(negative.items())}:")
outcome = learn(state, negative, chatty_ask)
print("learned:", outcome.constraint)
print("dropped with it (indistinguishable):", [str(c) for c in outcome.eliminated])
print("basis is now", len(state.basis), "candidates; learned network:",
      [str(c) for c in state.learned])

# A second round on another negative example finds the other hidden
# constraint; the basis keeps shrinking monotonically.
negative2 = Assignment({"x1": 1, "x2": 2, "x3": 1})
print(f"\nlearning from {dict(negative2.items())}:")
outcome2 = learn(state, negative2, chatty_ask)
print("learned:", outcome2.constraint)
print("learned network:", [str(c) for c in state.learned])
print("remaining candidates:", [str(c) for c in state.basis])
