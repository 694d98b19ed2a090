"""Command line: solve one problem, generate instances, run benchmarks,
serve the HTTP API, replay a session log."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ..engine import Status, run
from ..model import Assignment
from ..oracle import ScriptMismatch
from .bench import run_bench
from .events import EventRecorder, events_equal, read_events, replay_session, strip_time_fields
from .problems import (
    ProblemFormatError,
    generate_random_instance,
    load_problem,
    make_oracle,
    save_problem,
)


class TerminalOracle:
    """Asks the person at the terminal."""

    def __init__(self, out=sys.stdout):
        self.out = out
        self.count = 0

    def ask(self, e: Assignment) -> bool:
        self.count += 1
        kind = "partial" if len(e) else "empty"
        print(f"\nquery #{self.count} ({kind} assignment):", file=self.out)
        for var, value in e.items():
            print(f"  {var} = {value}", file=self.out)
        while True:
            raw = input("feasible? [y/n] ").strip().lower()
            if raw in ("y", "yes"):
                return True
            if raw in ("n", "no"):
                return False
            print("please answer y or n", file=self.out)


def _cmd_solve(args) -> int:
    spec = load_problem(args.spec)
    if spec.oracle.kind == "interactive":
        oracle = TerminalOracle()
    else:
        oracle = make_oracle(spec, base_dir=Path(args.spec).parent)
    recorder = EventRecorder(spec.to_dict())
    state = run(spec.config(), oracle, recorder)
    if args.log:
        recorder.write(args.log)
    if not args.quiet:
        print(f"status: {state.status.value} ({state.termination_reason})")
        print(f"bounds: lb={state.lb} ub={state.ub} gap={state.ub - state.lb}")
        if spec.objective_sense == "max":
            print("note: objective was maximization; values above are for the negated form")
        print(f"lower witness: {dict(state.e_l.items())}")
        print(f"upper witness: {dict(state.e_u.items())}")
        print(f"iterations: {state.iteration}")
        counts = ", ".join(f"{k}={v}" for k, v in sorted(state.queries_by_kind.items()))
        print(f"queries: {len(state.queries)} ({counts or 'none'})")
        print(f"learned: {[str(c) for c in state.acq.learned]}")
    return 0 if state.status in (Status.OPTIMAL, Status.NEAR_OPTIMAL) else 1


def _cmd_gen(args) -> int:
    spec = generate_random_instance(args.seed, args.n, args.d, args.density)
    if args.out:
        save_problem(spec, args.out)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(spec.to_dict(), indent=2))
    return 0


def _cmd_bench(args) -> int:
    paths: list[Path] = []
    for entry in args.specs:
        p = Path(entry)
        if p.is_dir():
            paths.extend(sorted(p.glob("*.json")))
        else:
            paths.append(p)
    if not paths:
        print("no problem files found", file=sys.stderr)
    specs = [(p.stem, load_problem(p)) for p in paths]
    records = run_bench(specs, args.out, logs_dir=args.logs)
    done = sum(1 for r in records if not r.status.startswith("error"))
    print(f"ran {len(records)} instances ({done} ok) -> {args.out}")
    return 0 if done == len(records) else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_replay(args) -> int:
    original = read_events(args.log)
    try:
        _, replayed = replay_session(original)
    except ScriptMismatch as err:
        print(f"replay diverged: {err}", file=sys.stderr)
        return 1
    if events_equal(original, replayed):
        print(f"replay ok: {len(replayed)} events match (timestamps excluded)")
        return 0
    for i, (a, b) in enumerate(zip(original, replayed)):
        if strip_time_fields(a) != strip_time_fields(b):
            print(f"first difference at event {i}:", file=sys.stderr)
            print(f"  logged:   {json.dumps(strip_time_fields(a))}", file=sys.stderr)
            print(f"  replayed: {json.dumps(strip_time_fields(b))}", file=sys.stderr)
            break
    else:
        print(
            f"length differs: logged {len(original)} vs replayed {len(replayed)}",
            file=sys.stderr,
        )
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="learnopt",
        description="optimize under constraints known only to a yes/no oracle",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one session from a problem file")
    p.add_argument("spec", help="problem JSON file")
    p.add_argument("--log", help="write the session event log (JSONL)")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="number of variables")
    p.add_argument("--d", type=int, required=True, help="domain size")
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--out", help="output file (stdout when omitted)")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("bench", help="run a batch of simulated sessions")
    p.add_argument("specs", nargs="+", help="problem files or directories of them")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--logs", help="directory for per-session JSONL logs")
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("serve", help="serve the HTTP session API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("LEARNOPT_PORT", "8080")),
    )
    p.add_argument("--ui", help="directory of static UI files to serve at /")
    p.set_defaults(fn=_cmd_serve)

    p = sub.add_parser("replay", help="re-run a logged session and compare")
    p.add_argument("log", help="session event log (JSONL)")
    p.set_defaults(fn=_cmd_replay)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ProblemFormatError as err:
        print(f"problem file error: {err}", file=sys.stderr)
        return 2
    except FileNotFoundError as err:
        print(f"not found: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
