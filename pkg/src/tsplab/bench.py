"""Seeded benchmark harness: plans, runs, CSV/JSON reports, gaps, stats.

Runs are embarrassingly parallel; each gets a seed derived by content hash
from (base_seed, algorithm, variant, instance, rep), a time limit of
ceil(time_scale * n) seconds, and its tour is re-validated and re-costed by
the harness before anything is recorded.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .errors import ZeroBaseline
from .instances import Instance, build_distance_matrix, generate_random_instance, parse_instance
from .seeding import stable_hash
from .solvers import SolveBudget, get_algorithm, run_solver
from .tours import tour_length, validate_tour

CSV_HEADER = "algorithm,variant,config_id,instance,n,seed,rep,best_cost,elapsed_s,evaluations,nodes_expanded,status"

_GRACE_FACTOR = 2.0  # elapsed beyond this multiple of the limit downgrades ok


def time_limit_for(n: int, time_scale: float) -> int:
    """Per-run limit in whole seconds: ceil(time_scale * n), never below 1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if time_scale <= 0:
        raise ValueError(f"time_scale must be positive, got {time_scale}")
    return max(1, math.ceil(time_scale * n))


def compute_gap(baseline_cost: float, variant_cost: float) -> float:
    """Percent improvement over the baseline; positive means variant better."""
    if baseline_cost <= 0:
        raise ZeroBaseline(f"baseline cost must be positive, got {baseline_cost}")
    return 100.0 * (baseline_cost - variant_cost) / baseline_cost


@dataclass(frozen=True)
class InstanceSpec:
    """Where one instance comes from: a TSPLIB file or the seeded generator."""

    source: str  # "file" | "random"
    path: str | None = None
    n: int | None = None
    seed: int | None = None
    lo: float = 0.0
    hi: float = 100.0

    def resolve(self) -> Instance:
        if self.source == "file":
            with open(self.path, encoding="utf-8") as fh:
                return parse_instance(fh.read())
        return generate_random_instance(self.n, self.seed, (self.lo, self.hi))


@dataclass(frozen=True)
class AlgorithmSpec:
    algorithm: str
    variant: str = "baseline"
    config_id: str = "default"
    values: dict = field(default_factory=dict)


@dataclass
class ExperimentPlan:
    instances: list[InstanceSpec]
    algorithms: list[AlgorithmSpec]
    repetitions: int = 30
    base_seed: int = 0
    time_scale: float = 1.0
    metric: str = "best_cost"  # best_cost | runtime
    rounding: str = "none"

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.time_scale <= 0:
            raise ValueError(f"time_scale must be positive, got {self.time_scale}")
        if self.metric not in ("best_cost", "runtime"):
            raise ValueError(f"metric must be best_cost or runtime, got {self.metric!r}")


@dataclass(frozen=True)
class RunRecord:
    algorithm: str
    variant: str
    config_id: str
    instance: str
    n: int
    seed: int
    rep: int
    best_cost: float | None
    elapsed_s: float
    evaluations: int | None
    nodes_expanded: int | None
    status: str  # ok | timeout_with_result | failed


@dataclass(frozen=True)
class SummaryStats:
    algorithm: str
    variant: str
    instance: str
    count: int
    minimum: float | None
    q1: float | None
    median: float | None
    q3: float | None
    maximum: float | None
    mean: float | None
    stddev: float | None
    n_a: bool = False


def parse_plan(text: str) -> ExperimentPlan:
    """Parse the plain-text plan format (key = value header plus two lists)."""
    header: dict[str, str] = {}
    instances: list[InstanceSpec] = []
    algorithms: list[AlgorithmSpec] = []
    section = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            section = line.strip("[]").lower()
            if section not in ("instances", "algorithms"):
                raise ValueError(f"unknown plan section [{section}]")
            continue
        if section is None:
            key, _, value = line.partition("=")
            if not _:
                raise ValueError(f"expected key = value before sections, got {line!r}")
            header[key.strip()] = value.strip()
        elif section == "instances":
            instances.append(_parse_instance_line(line))
        else:
            algorithms.append(_parse_algorithm_line(line))
    if not instances:
        raise ValueError("plan has no [instances]")
    if not algorithms:
        raise ValueError("plan has no [algorithms]")
    return ExperimentPlan(
        instances=instances,
        algorithms=algorithms,
        repetitions=int(header.get("repetitions", 30)),
        base_seed=int(header.get("base_seed", 0)),
        time_scale=float(header.get("time_scale", 1.0)),
        metric=header.get("metric", "best_cost"),
        rounding=header.get("rounding", "none"),
    )


def load_plan(path: str) -> ExperimentPlan:
    with open(path, encoding="utf-8") as fh:
        return parse_plan(fh.read())


def _parse_kv(tokens: list[str], context: str) -> dict[str, str]:
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep:
            raise ValueError(f"expected key=value in {context}, got {tok!r}")
        out[key] = value
    return out


def _parse_instance_line(line: str) -> InstanceSpec:
    tokens = line.split()
    kind = tokens[0]
    if kind == "file":
        if len(tokens) != 2:
            raise ValueError(f"instance line needs one path: {line!r}")
        return InstanceSpec(source="file", path=tokens[1])
    if kind == "random":
        kv = _parse_kv(tokens[1:], "instance line")
        return InstanceSpec(
            source="random",
            n=int(kv["n"]),
            seed=int(kv["seed"]),
            lo=float(kv.get("lo", 0.0)),
            hi=float(kv.get("hi", 100.0)),
        )
    raise ValueError(f"unknown instance source {kind!r}")


def _parse_algorithm_line(line: str) -> AlgorithmSpec:
    tokens = line.split()
    name = tokens[0]
    info = get_algorithm(name)  # raises UnknownAlgorithm early
    kv = _parse_kv(tokens[1:], f"algorithm line {name}")
    variant = kv.pop("variant", "baseline")
    if variant not in info.variants:
        raise ValueError(f"{name} has no variant {variant!r}")
    preset_name = kv.pop("preset", None)
    if preset_name is not None and kv:
        raise ValueError(f"give either preset= or inline values, not both: {line!r}")
    if preset_name is not None:
        from .tuning import preset  # deferred: tuning imports this module's helpers

        cfg = preset(name, preset_name)
        return AlgorithmSpec(name, variant, config_id=preset_name, values=dict(cfg.values))
    if kv:
        values = {k: float(v) for k, v in kv.items()}
        return AlgorithmSpec(name, variant, config_id="custom", values=values)
    if info.tunable:
        from .tuning import preset

        cfg = preset(name, "original")
        return AlgorithmSpec(name, variant, config_id="original", values=dict(cfg.values))
    return AlgorithmSpec(name, variant, config_id="default", values={})


@dataclass(frozen=True)
class RunSpec:
    algorithm: str
    variant: str
    config_id: str
    values: dict
    instance_index: int
    rep: int
    seed: int
    time_limit: int


def expand_plan(plan: ExperimentPlan, names: list[str], sizes: list[int]) -> list[RunSpec]:
    """Deterministic run list: stochastic solvers get `repetitions` runs,
    deterministic heuristics exactly one."""
    specs = []
    for spec in plan.algorithms:
        info = get_algorithm(spec.algorithm)
        reps = 1 if info.kind == "deterministic" else plan.repetitions
        for idx, (name, n) in enumerate(zip(names, sizes)):
            for rep in range(reps):
                seed = stable_hash(plan.base_seed, spec.algorithm, spec.variant, name, rep)
                specs.append(RunSpec(
                    algorithm=spec.algorithm,
                    variant=spec.variant,
                    config_id=spec.config_id,
                    values=spec.values,
                    instance_index=idx,
                    rep=rep,
                    seed=seed,
                    time_limit=time_limit_for(n, plan.time_scale),
                ))
    return specs


def _execute_spec(spec: RunSpec, inst: Instance, matrix) -> RunRecord:
    budget = SolveBudget(time_limit=float(spec.time_limit))
    try:
        outcome = run_solver(
            spec.algorithm, inst, matrix, spec.values, spec.variant, budget, spec.seed
        )
        check = validate_tour(outcome.best, inst.dimension)
        if not check.ok:
            raise ValueError(f"solver returned an invalid tour: {check.problem}")
        cost = tour_length(outcome.best, matrix)  # harness re-costs independently
        if abs(cost - outcome.best_cost) > 1e-9 * max(1.0, abs(cost)):
            raise ValueError(
                f"reported cost {outcome.best_cost} != recomputed {cost}"
            )
        status = "ok"
        if outcome.elapsed > _GRACE_FACTOR * spec.time_limit:
            status = "timeout_with_result"
        if outcome.proven_optimal is False:
            status = "timeout_with_result"
        return RunRecord(
            algorithm=spec.algorithm, variant=spec.variant, config_id=spec.config_id,
            instance=inst.name, n=inst.dimension, seed=spec.seed, rep=spec.rep,
            best_cost=cost, elapsed_s=outcome.elapsed, evaluations=outcome.evaluations,
            nodes_expanded=outcome.nodes_expanded, status=status,
        )
    except Exception:
        return RunRecord(
            algorithm=spec.algorithm, variant=spec.variant, config_id=spec.config_id,
            instance=inst.name, n=inst.dimension, seed=spec.seed, rep=spec.rep,
            best_cost=None, elapsed_s=0.0, evaluations=None,
            nodes_expanded=None, status="failed",
        )


def run_experiment(plan: ExperimentPlan, workers: int = 1) -> list[RunRecord]:
    """Execute every run of the plan; failures become failed rows, not aborts."""
    resolved = [spec.resolve() for spec in plan.instances]
    matrices = [build_distance_matrix(inst, plan.rounding) for inst in resolved]
    names = [inst.name for inst in resolved]
    sizes = [inst.dimension for inst in resolved]
    specs = expand_plan(plan, names, sizes)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(
                _execute_spec,
                specs,
                (resolved[s.instance_index] for s in specs),
                (matrices[s.instance_index] for s in specs),
            ))
    else:
        records = [
            _execute_spec(s, resolved[s.instance_index], matrices[s.instance_index])
            for s in specs
        ]
    records.sort(key=lambda r: (r.algorithm, r.variant, r.config_id, r.instance, r.rep))
    return records


def write_csv(records: list[RunRecord], path: str | None = None) -> str:
    """Serialize records; returns the CSV text (and writes it when path given)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for r in records:
        writer.writerow([
            r.algorithm, r.variant, r.config_id, r.instance, r.n, r.seed, r.rep,
            "" if r.best_cost is None else repr(r.best_cost),
            repr(r.elapsed_s),
            "" if r.evaluations is None else r.evaluations,
            "" if r.nodes_expanded is None else r.nodes_expanded,
            r.status,
        ])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def read_csv(text: str) -> list[RunRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != CSV_HEADER.split(","):
        raise ValueError("unrecognized CSV header")
    records = []
    for row in rows[1:]:
        if not row:
            continue
        records.append(RunRecord(
            algorithm=row[0], variant=row[1], config_id=row[2], instance=row[3],
            n=int(row[4]), seed=int(row[5]), rep=int(row[6]),
            best_cost=float(row[7]) if row[7] else None,
            elapsed_s=float(row[8]),
            evaluations=int(row[9]) if row[9] else None,
            nodes_expanded=int(row[10]) if row[10] else None,
            status=row[11],
        ))
    return records


def _median(sorted_values: list[float]) -> float:
    n = len(sorted_values)
    mid = n // 2
    if n % 2 == 1:
        return sorted_values[mid]
    return (sorted_values[mid - 1] + sorted_values[mid]) / 2.0


def order_statistics(values: list[float]) -> tuple[float, float, float, float, float]:
    """(min, q1, median, q3, max) with quartiles as medians of the halves,
    excluding the middle element when the count is odd."""
    s = sorted(values)
    n = len(s)
    med = _median(s)
    if n == 1:
        return s[0], med, med, med, s[-1]
    q1 = _median(s[: n // 2])
    q3 = _median(s[(n + 1) // 2 :])
    return s[0], q1, med, q3, s[-1]


def summarize(records: list[RunRecord], metric: str = "best_cost") -> list[SummaryStats]:
    """Per (algorithm, variant, instance) stats of the metric over usable rows."""
    groups: dict[tuple, list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.algorithm, r.variant, r.instance), []).append(r)
    out = []
    for (algorithm, variant, instance), rows in sorted(groups.items()):
        values = [
            r.elapsed_s if metric == "runtime" else r.best_cost
            for r in rows
            if r.status != "failed" and r.best_cost is not None
        ]
        if not values:
            out.append(SummaryStats(algorithm, variant, instance, 0,
                                    None, None, None, None, None, None, None, n_a=True))
            continue
        mn, q1, med, q3, mx = order_statistics(values)
        mean = sum(values) / len(values)
        if len(values) > 1:
            var = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
            stddev = math.sqrt(var)
        else:
            stddev = 0.0
        out.append(SummaryStats(algorithm, variant, instance, len(values),
                                mn, q1, med, q3, mx, mean, stddev))
    return out


def gap_table(records: list[RunRecord], baseline_variant: str = "baseline") -> list[dict]:
    """Median-vs-median percent gaps of every variant against the baseline
    variant, per (algorithm, instance); positive means the variant is better."""
    stats = summarize(records)
    medians = {(s.algorithm, s.variant, s.instance): s.median for s in stats if not s.n_a}
    rows = []
    for (algorithm, variant, instance), med in sorted(medians.items()):
        if variant == baseline_variant:
            continue
        base = medians.get((algorithm, baseline_variant, instance))
        if base is None:
            continue
        rows.append({
            "algorithm": algorithm,
            "instance": instance,
            "variant": variant,
            "baseline_median": base,
            "variant_median": med,
            "gap_percent": compute_gap(base, med),
        })
    return rows


def json_report(plan: ExperimentPlan, records: list[RunRecord],
                baseline_variant: str = "baseline") -> dict:
    """Versioned report: plan echo, per-group stats, gap table."""
    return {
        "schema": 1,
        "plan": {
            "instances": [asdict(s) for s in plan.instances],
            "algorithms": [asdict(a) for a in plan.algorithms],
            "repetitions": plan.repetitions,
            "base_seed": plan.base_seed,
            "time_scale": plan.time_scale,
            "metric": plan.metric,
            "rounding": plan.rounding,
        },
        "summary": [asdict(s) for s in summarize(records, metric=plan.metric)],
        "gaps": gap_table(records, baseline_variant=baseline_variant),
    }


def write_json_report(plan, records, path: str, baseline_variant: str = "baseline") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(json_report(plan, records, baseline_variant), fh, indent=2)
        fh.write("\n")
