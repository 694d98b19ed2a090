"""learnopt: solve optimization problems whose constraints are hidden
behind a yes/no feasibility oracle.

The objective is known; the constraint network is not. Membership queries
acquire constraints while the optima of the learned network and of the
remaining candidate pool sandwich the hidden optimum, so the session can
stop as soon as the bounds meet, long before the whole network is known.
"""

from .acquisition import (
    AcquisitionState,
    LearnOutcome,
    create_basis,
    find_c,
    find_scope,
    learn,
    reduce,
)
from .engine import (
    BoundTracePoint,
    SessionConfig,
    SessionObserver,
    SessionState,
    Status,
    generate_query,
    init_session,
    run,
    step,
)
from .model import (
    ALL_RELATIONS,
    Assignment,
    Constraint,
    ConstraintNetwork,
    Evaluation,
    LinearObjective,
    Relation,
    Vocabulary,
    complement_of,
    evaluate,
    kappa,
    objective_value,
)
from .oracle import (
    AskTimeout,
    HiddenNetworkOracle,
    InteractiveOracle,
    Oracle,
    ScriptedOracle,
    ScriptExhausted,
    ScriptMismatch,
)
from .solver import (
    Limits,
    OptResult,
    SolveResult,
    SolveStatus,
    optimize,
    solve,
    solve_violating,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_RELATIONS",
    "AcquisitionState",
    "AskTimeout",
    "Assignment",
    "BoundTracePoint",
    "Constraint",
    "ConstraintNetwork",
    "Evaluation",
    "HiddenNetworkOracle",
    "InteractiveOracle",
    "LearnOutcome",
    "Limits",
    "LinearObjective",
    "OptResult",
    "Oracle",
    "Relation",
    "ScriptExhausted",
    "ScriptMismatch",
    "ScriptedOracle",
    "SessionConfig",
    "SessionObserver",
    "SessionState",
    "SolveResult",
    "SolveStatus",
    "Status",
    "Vocabulary",
    "complement_of",
    "create_basis",
    "evaluate",
    "find_c",
    "find_scope",
    "generate_query",
    "init_session",
    "kappa",
    "learn",
    "objective_value",
    "optimize",
    "reduce",
    "run",
    "solve",
    "solve_violating",
    "step",
]
