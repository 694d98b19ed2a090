"""Problem files and random instance generation.

A problem file is one JSON object naming the variables, their integer
domains (inclusive ranges or explicit value lists), the linear objective,
the relation language, the oracle behind ask(), the trusted seed
solution, the precision target and the time budget. Parsing validates
everything and names the offending field on failure.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from ..engine import SessionConfig
from ..model import (
    ALL_RELATIONS,
    Assignment,
    Constraint,
    ConstraintNetwork,
    Evaluation,
    LinearObjective,
    Relation,
    Vocabulary,
    evaluate,
)
from ..oracle import HiddenNetworkOracle, InteractiveOracle, ScriptedOracle
from ..solver import solve

ORACLE_KINDS = ("hidden_network", "interactive", "scripted")


class ProblemFormatError(ValueError):
    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


def format_constraint(c: Constraint) -> str:
    return str(c)


def parse_constraint(text: str, voc: Vocabulary) -> Constraint:
    """Parse 'x1 < x2' into its canonical orientation."""
    parts = text.split()
    if len(parts) != 3:
        raise ProblemFormatError(f"expected 'var op var', got {text!r}")
    x, op, y = parts
    for var in (x, y):
        if var not in voc.domains:
            raise ProblemFormatError(f"unknown variable {var!r} in {text!r}")
    if x == y:
        raise ProblemFormatError(f"scope variables must differ in {text!r}")
    return voc.oriented(Relation.from_symbol(op), x, y)


@dataclass(frozen=True)
class OracleSpec:
    kind: str
    constraints: tuple[Constraint, ...] = ()
    log_path: str | None = None


@dataclass(frozen=True)
class ProblemSpec:
    variables: tuple[str, ...]
    domains: dict[str, tuple[int, ...]]
    objective_coefficients: dict[str, int]
    objective_constant: int
    objective_sense: str
    language: frozenset[Relation]
    oracle: OracleSpec
    seed_solution: dict[str, int]
    epsilon: int = 0
    cutoff_seconds: float = 3600.0

    def vocabulary(self) -> Vocabulary:
        f = LinearObjective(self.objective_coefficients, self.objective_constant)
        if self.objective_sense == "max":
            f = f.negated()  # the engine only ever minimizes
        return Vocabulary(self.variables, self.domains, f)

    def seed(self) -> Assignment:
        return Assignment(self.seed_solution)

    def config(self) -> SessionConfig:
        return SessionConfig(
            self.vocabulary(),
            self.language,
            self.seed(),
            self.epsilon,
            self.cutoff_seconds,
        )

    def hidden_network(self) -> ConstraintNetwork:
        if self.oracle.kind != "hidden_network":
            raise ValueError("problem has no hidden network")
        return ConstraintNetwork(self.oracle.constraints)

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "domains": {v: _domain_to_json(self.domains[v]) for v in self.variables},
            "objective": {
                "coefficients": {v: self.objective_coefficients[v] for v in sorted(self.objective_coefficients)},
                "constant": self.objective_constant,
                "sense": self.objective_sense,
            },
            "language": [r.symbol for r in sorted(self.language, key=lambda r: r.rank)],
            "oracle": _oracle_to_json(self.oracle),
            "seed_solution": {v: self.seed_solution[v] for v in sorted(self.seed_solution)},
            "epsilon": self.epsilon,
            "cutoff_seconds": self.cutoff_seconds,
        }

    @classmethod
    def from_dict(cls, data: dict) -> ProblemSpec:
        return _spec_from_dict(data)


def _domain_to_json(values: tuple[int, ...]):
    if len(values) > 1 and values == tuple(range(values[0], values[-1] + 1)):
        return {"min": values[0], "max": values[-1]}
    return list(values)


def _oracle_to_json(oracle: OracleSpec) -> dict:
    if oracle.kind == "hidden_network":
        return {"type": "hidden_network", "constraints": [str(c) for c in oracle.constraints]}
    if oracle.kind == "scripted":
        return {"type": "scripted", "log_path": oracle.log_path}
    return {"type": "interactive"}


def _parse_domain(raw, var: str) -> tuple[int, ...]:
    if isinstance(raw, dict):
        if set(raw) != {"min", "max"}:
            raise ProblemFormatError("range domains need exactly min and max", f"domains.{var}")
        lo, hi = raw["min"], raw["max"]
        if not isinstance(lo, int) or not isinstance(hi, int) or lo > hi:
            raise ProblemFormatError(f"bad range {raw!r}", f"domains.{var}")
        return tuple(range(lo, hi + 1))
    if isinstance(raw, list) and raw and all(isinstance(v, int) for v in raw):
        return tuple(sorted(set(raw)))
    raise ProblemFormatError("domain must be a value list or a min/max range", f"domains.{var}")


def _spec_from_dict(data: dict) -> ProblemSpec:
    if not isinstance(data, dict):
        raise ProblemFormatError("problem must be a JSON object")
    for key in ("variables", "domains", "objective", "seed_solution"):
        if key not in data:
            raise ProblemFormatError("required field missing", key)

    variables = data["variables"]
    if (
        not isinstance(variables, list)
        or not variables
        or not all(isinstance(v, str) for v in variables)
    ):
        raise ProblemFormatError("must be a nonempty list of names", "variables")
    if len(set(variables)) != len(variables):
        raise ProblemFormatError("duplicate names", "variables")
    variables = tuple(variables)

    raw_domains = data["domains"]
    if not isinstance(raw_domains, dict):
        raise ProblemFormatError("must map variables to domains", "domains")
    domains: dict[str, tuple[int, ...]] = {}
    for var in variables:
        if var not in raw_domains:
            raise ProblemFormatError("missing domain", f"domains.{var}")
        domains[var] = _parse_domain(raw_domains[var], var)
    for var in raw_domains:
        if var not in domains:
            raise ProblemFormatError("domain for unknown variable", f"domains.{var}")

    objective = data["objective"]
    if not isinstance(objective, dict) or "coefficients" not in objective:
        raise ProblemFormatError("needs a coefficients map", "objective")
    coefficients = objective["coefficients"]
    if not isinstance(coefficients, dict) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in coefficients.values()
    ):
        raise ProblemFormatError("coefficients must be integers", "objective.coefficients")
    unknown = set(coefficients) - set(variables)
    if unknown:
        raise ProblemFormatError(f"unknown variables {sorted(unknown)}", "objective.coefficients")
    constant = objective.get("constant", 0)
    if not isinstance(constant, int) or isinstance(constant, bool):
        raise ProblemFormatError("must be an integer", "objective.constant")
    sense = objective.get("sense", "min")
    if sense not in ("min", "max"):
        raise ProblemFormatError("must be 'min' or 'max'", "objective.sense")

    raw_language = data.get("language", [r.symbol for r in Relation])
    try:
        language = frozenset(Relation.from_symbol(s) for s in raw_language)
    except ValueError as err:
        raise ProblemFormatError(str(err), "language") from None
    if not language:
        raise ProblemFormatError("must not be empty", "language")

    seed_raw = data["seed_solution"]
    if not isinstance(seed_raw, dict):
        raise ProblemFormatError("must map every variable to a value", "seed_solution")
    for var in variables:
        if var not in seed_raw:
            raise ProblemFormatError(f"missing value for {var}", "seed_solution")
        value = seed_raw[var]
        if not isinstance(value, int) or isinstance(value, bool):
            raise ProblemFormatError(f"value for {var} must be an integer", "seed_solution")
        if value not in domains[var]:
            raise ProblemFormatError(f"value {value} outside the domain of {var}", "seed_solution")
    extra = set(seed_raw) - set(variables)
    if extra:
        raise ProblemFormatError(f"binds unknown variables {sorted(extra)}", "seed_solution")
    seed_solution = {v: seed_raw[v] for v in variables}

    epsilon = data.get("epsilon", 0)
    if not isinstance(epsilon, int) or isinstance(epsilon, bool) or epsilon < 0:
        raise ProblemFormatError("must be a non-negative integer", "epsilon")
    cutoff = data.get("cutoff_seconds", 3600.0)
    if isinstance(cutoff, bool) or not isinstance(cutoff, (int, float)) or cutoff < 0:
        raise ProblemFormatError("must be a non-negative number", "cutoff_seconds")

    # vocabulary construction re-checks the pieces jointly
    voc = Vocabulary(variables, domains, LinearObjective(coefficients, constant))

    raw_oracle = data.get("oracle", {"type": "interactive"})
    if not isinstance(raw_oracle, dict) or raw_oracle.get("type") not in ORACLE_KINDS:
        raise ProblemFormatError(f"type must be one of {ORACLE_KINDS}", "oracle.type")
    kind = raw_oracle["type"]
    constraints: tuple[Constraint, ...] = ()
    log_path = None
    if kind == "hidden_network":
        raw_list = raw_oracle.get("constraints", [])
        if not isinstance(raw_list, list):
            raise ProblemFormatError("must be a list of constraint strings", "oracle.constraints")
        parsed = []
        seed_assignment = Assignment(seed_solution)
        for text in raw_list:
            c = parse_constraint(text, voc)
            if c.relation not in language:
                raise ProblemFormatError(
                    f"hidden constraint {text!r} uses a relation outside the language",
                    "oracle.constraints",
                )
            if evaluate(c, seed_assignment) is not Evaluation.SATISFIED:
                raise ProblemFormatError(
                    f"seed_solution violates hidden constraint {text!r}", "seed_solution"
                )
            parsed.append(c)
        constraints = tuple(sorted(set(parsed), key=voc.constraint_key))
    elif kind == "scripted":
        log_path = raw_oracle.get("log_path")
        if not isinstance(log_path, str) or not log_path:
            raise ProblemFormatError("scripted oracle needs a log_path", "oracle.log_path")

    return ProblemSpec(
        variables=variables,
        domains=domains,
        objective_coefficients=dict(coefficients),
        objective_constant=constant,
        objective_sense=sense,
        language=language,
        oracle=OracleSpec(kind, constraints, log_path),
        seed_solution=seed_solution,
        epsilon=epsilon,
        cutoff_seconds=float(cutoff),
    )


def load_problem(path: str | Path) -> ProblemSpec:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise ProblemFormatError(f"{path}: not valid JSON ({err})") from None
    return ProblemSpec.from_dict(data)


def save_problem(spec: ProblemSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(spec.to_dict(), indent=2) + "\n")


def make_oracle(spec: ProblemSpec, base_dir: str | Path | None = None):
    """Build the oracle a problem file describes.

    Interactive problems get a fresh blocking oracle; whoever serves the
    session decides how answers arrive.
    """
    if spec.oracle.kind == "hidden_network":
        return HiddenNetworkOracle(ConstraintNetwork(spec.oracle.constraints))
    if spec.oracle.kind == "scripted":
        from .events import read_events, script_from_log

        path = Path(spec.oracle.log_path)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        return ScriptedOracle(script_from_log(read_events(path)))
    return InteractiveOracle()


def generate_random_instance(seed: int, n: int, domain_size: int, density: float) -> ProblemSpec:
    """A random satisfiable hidden network over the full comparison
    language, a seed solution, and a random objective; deterministic in
    the seed.

    At most one relation is drawn per variable pair, so the hidden network
    is normalized the way candidate elimination expects.
    """
    if n < 2 or domain_size < 1:
        raise ValueError("need at least two variables and a nonempty domain")
    if not 0 < density <= 1:
        raise ValueError("density must be in (0, 1]")
    rng = random.Random(seed)
    names = tuple(f"x{i}" for i in range(1, n + 1))
    domains = {v: tuple(range(1, domain_size + 1)) for v in names}
    probe_voc = Vocabulary(names, domains, LinearObjective({}))

    target: set[Constraint] = set()
    seed_assignment: Assignment | None = None
    for _ in range(50):
        target = set()
        for pair in probe_voc.pairs():
            if rng.random() < density:
                target.add(Constraint(rng.choice(list(Relation)), pair))
        seed_assignment = _sample_solution(rng, probe_voc, target)
        if seed_assignment is not None:
            break
    if seed_assignment is None:
        raise RuntimeError("could not sample a satisfiable hidden network")

    coefficients = {v: rng.randint(-3, 3) for v in names}
    return ProblemSpec(
        variables=names,
        domains=domains,
        objective_coefficients=coefficients,
        objective_constant=0,
        objective_sense="min",
        language=ALL_RELATIONS,
        oracle=OracleSpec(
            "hidden_network",
            tuple(sorted(target, key=probe_voc.constraint_key)),
        ),
        seed_solution=seed_assignment.bindings(),
        epsilon=0,
        cutoff_seconds=60.0,
    )


def _sample_solution(rng, voc: Vocabulary, target: set[Constraint]) -> Assignment | None:
    """A random solution of the target, not systematically an extreme one;
    falls back to search before giving up on the draw."""
    network = ConstraintNetwork(target)
    for _ in range(200):
        candidate = Assignment({v: rng.choice(voc.domain(v)) for v in voc.variables})
        if not any(evaluate(c, candidate) is Evaluation.VIOLATED for c in network):
            return candidate
    result = solve(voc, network)
    return result.solution if result.is_sat else None
