"""A complete session: queries on one side, converging bounds on the
other, stopping as soon as the bounds meet.

Run:  python3 demos/04_full_session.py
"""

from learnopt import (
    ALL_RELATIONS,
    Assignment,
    Constraint,
    ConstraintNetwork,
    HiddenNetworkOracle,
    LinearObjective,
    Relation,
    SessionConfig,
    SessionObserver,
    Vocabulary,
    run,
)

voc = Vocabulary(
    variables=("x1", "x2", "x3", "x4"),
    domains={v: (1, 2, 3, 4) for v in ("x1", "x2", "x3", "x4")},
    objective=LinearObjective({"x1": 2, "x2": 1, "x3": -1, "x4": 1}),
)
hidden = ConstraintNetwork(
    {
        Constraint(Relation.LT, ("x1", "x2")),
        Constraint(Relation.LE, ("x2", "x3")),
        Constraint(Relation.NE, ("x3", "x4")),
    }
)
config = SessionConfig(
    vocabulary=voc,
    language=ALL_RELATIONS,
    seed_solution=Assignment({"x1": 1, "x2": 2, "x3": 3, "x4": 4}),
    epsilon=0,
    cutoff_seconds=60.0,
)


class Narrator(SessionObserver):
    def on_query(self, qid, kind, e, partial):
        shape = "partial" if partial else "complete"
        print(f"  q{qid:<2} [{kind:>11}] {shape:>8}: {dict(e.items())}")

    def on_answer(self, qid, answer):
        print(f"       -> {'yes' if answer else 'no'}")

    def on_learned(self, constraint, dropped):
        print(f"  learned: {constraint}")

    def on_bounds(self, point):
        print(f"  bounds after iteration {point.iteration}: "
              f"lb={point.lb} ub={point.ub} (queries so far: {point.queries})")


print("session transcript:")
state = run(config, HiddenNetworkOracle(hidden), Narrator())

print("\nresult:", state.status.value, f"({state.termination_reason})")
print("bounds: lb =", state.lb, " ub =", state.ub)
print("optimal witness:", dict(state.e_u.items()))
print("learned network:", [str(c) for c in state.acq.learned])
print("queries by kind:", dict(sorted(state.queries_by_kind.items())))
print("\nbound trace:")
for p in state.trace:
    print(f"  iter {p.iteration}: [{p.lb}, {p.ub}] after {p.queries} queries")
