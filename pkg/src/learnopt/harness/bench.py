"""Batch execution of simulated sessions with an independent referee.

Each instance is run to termination, the true optimum is recomputed by
exhaustive enumeration (no search involved), and one CSV row per instance
records bounds, query counts and status. Per-instance failures become
error rows; the batch keeps going.
"""

from __future__ import annotations

import csv
import itertools
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from ..engine import run
from ..model import Constraint, Vocabulary
from .events import EventRecorder
from .problems import ProblemSpec, make_oracle

CSV_HEADER = [
    "instance_id",
    "n",
    "domain_size",
    "target_size",
    "queries_total",
    "queries_toplevel",
    "queries_findscope",
    "queries_findc",
    "queries_bound_check",
    "iterations",
    "lb",
    "ub",
    "gap",
    "status",
    "opt_true",
    "wall_seconds",
]


def brute_force_optimum(voc: Vocabulary, constraints: Iterable[Constraint]) -> int | None:
    """Minimum objective over every point of the cartesian product that
    satisfies all constraints; None when there is none. Pure enumeration,
    independent of the search code."""
    cs = [(c.scope[0], c.scope[1], c.relation) for c in constraints]
    f = voc.objective
    names = list(voc.variables)
    best: int | None = None
    for values in itertools.product(*(voc.domain(v) for v in names)):
        point = dict(zip(names, values))
        if any(not rel.holds(point[x], point[y]) for x, y, rel in cs):
            continue
        value = f.constant + sum(coeff * point[v] for v, coeff in f.coefficients.items())
        if best is None or value < best:
            best = value
    return best


@dataclass(frozen=True)
class BenchmarkRecord:
    instance_id: str
    n: int
    domain_size: int
    target_size: int | None
    queries_total: int
    queries_by_kind: dict[str, int]
    iterations: int
    lb: int | None
    ub: int | None
    gap: int | None
    status: str
    opt_true: int | None
    wall_seconds: float

    def row(self) -> list:
        return [
            self.instance_id,
            self.n,
            self.domain_size,
            _blank(self.target_size),
            self.queries_total,
            self.queries_by_kind.get("toplevel", 0),
            self.queries_by_kind.get("findscope", 0),
            self.queries_by_kind.get("findc", 0),
            self.queries_by_kind.get("bound_check", 0),
            self.iterations,
            _blank(self.lb),
            _blank(self.ub),
            _blank(self.gap),
            self.status,
            _blank(self.opt_true),
            f"{self.wall_seconds:.4f}",
        ]


def _blank(value):
    return "" if value is None else value


def run_bench(
    specs: Iterable[tuple[str, ProblemSpec]],
    csv_path: str | Path,
    logs_dir: str | Path | None = None,
) -> list[BenchmarkRecord]:
    """Run every (id, spec) pair, write the CSV and one JSONL event log
    per session. All specs must use a simulated oracle."""
    csv_path = Path(csv_path)
    if logs_dir is not None:
        logs_dir = Path(logs_dir)
        logs_dir.mkdir(parents=True, exist_ok=True)

    records: list[BenchmarkRecord] = []
    for instance_id, spec in specs:
        if spec.oracle.kind == "interactive":
            raise ValueError(f"{instance_id}: benchmarks need a simulated oracle")
        started = time.monotonic()
        try:
            records.append(_run_one(instance_id, spec, logs_dir, started))
        except Exception as err:  # noqa: BLE001 - keep the batch going
            voc = None
            try:
                voc = spec.vocabulary()
            except Exception:  # noqa: BLE001
                pass
            records.append(
                BenchmarkRecord(
                    instance_id=instance_id,
                    n=len(spec.variables),
                    domain_size=max((len(d) for d in spec.domains.values()), default=0),
                    target_size=len(spec.oracle.constraints) if spec.oracle.kind == "hidden_network" else None,
                    queries_total=0,
                    queries_by_kind={},
                    iterations=0,
                    lb=None,
                    ub=None,
                    gap=None,
                    status=f"error: {err}",
                    opt_true=brute_force_optimum(voc, spec.oracle.constraints) if voc else None,
                    wall_seconds=time.monotonic() - started,
                )
            )

    csv_path.parent.mkdir(parents=True, exist_ok=True)
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow(record.row())
    return records


def _run_one(instance_id, spec, logs_dir, started) -> BenchmarkRecord:
    recorder = EventRecorder(spec.to_dict())
    state = run(spec.config(), make_oracle(spec), recorder)
    if logs_dir is not None:
        recorder.write(Path(logs_dir) / f"{instance_id}.jsonl")
    opt_true = None
    target_size = None
    if spec.oracle.kind == "hidden_network":
        target_size = len(spec.oracle.constraints)
        opt_true = brute_force_optimum(spec.vocabulary(), spec.oracle.constraints)
    return BenchmarkRecord(
        instance_id=instance_id,
        n=len(spec.variables),
        domain_size=max(len(d) for d in spec.domains.values()),
        target_size=target_size,
        queries_total=len(state.queries),
        queries_by_kind=dict(state.queries_by_kind),
        iterations=state.iteration,
        lb=state.lb,
        ub=state.ub,
        gap=None if state.lb is None or state.ub is None else state.ub - state.lb,
        status=state.status.value,
        opt_true=opt_true,
        wall_seconds=time.monotonic() - started,
    )
