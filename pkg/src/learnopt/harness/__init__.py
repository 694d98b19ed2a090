"""Problem ingestion, instance generation, benchmarking, event logs, the
HTTP session service, and the command line."""

from .bench import BenchmarkRecord, brute_force_optimum, run_bench
from .events import (
    EventRecorder,
    events_equal,
    read_events,
    replay_session,
    script_from_log,
    strip_time_fields,
    write_events,
)
from .problems import (
    OracleSpec,
    ProblemFormatError,
    ProblemSpec,
    format_constraint,
    generate_random_instance,
    load_problem,
    make_oracle,
    parse_constraint,
    save_problem,
)

__all__ = [
    "BenchmarkRecord",
    "EventRecorder",
    "OracleSpec",
    "ProblemFormatError",
    "ProblemSpec",
    "brute_force_optimum",
    "events_equal",
    "format_constraint",
    "generate_random_instance",
    "load_problem",
    "make_oracle",
    "parse_constraint",
    "read_events",
    "replay_session",
    "run_bench",
    "save_problem",
    "script_from_log",
    "strip_time_fields",
    "write_events",
]
