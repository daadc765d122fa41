"""Solver registry: one uniform entry point per algorithm for harness and CLI."""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..errors import UnknownAlgorithm
from ..instances import Instance
from ..tours import tour_length
from .aco import AcoParams, solve_aco
from .alns import AlnsParams, solve_alns, update_weights
from .base import RunTracker, SolveBudget, SolveResult
from .branch_bound import BB_VARIANTS, OptResult, bound_cache, branch_and_bound, root_lower_bound
from .constructive import christofides, convex_hull, convex_hull_tour, greedy_matching, minimum_spanning_tree
from .ga import GA_VARIANTS, GaParams, nn_seed_count, solve_ga
from .rl import (
    RlParams,
    boltzmann_probabilities,
    boltzmann_temperature,
    q_update,
    solve_qlearning,
    solve_sarsa,
    SARSA_VARIANTS,
)
from .sa import SA_VARIANTS, SaParams, lundy_mees_beta, lundy_mees_step, metropolis_accept, solve_sa
from .tabu import TabuParams, solve_tabu

__all__ = [
    "AcoParams", "AlnsParams", "GaParams", "RlParams", "SaParams", "TabuParams",
    "SolveBudget", "SolveResult", "OptResult", "RunOutcome", "AlgorithmInfo",
    "ALGORITHMS", "get_algorithm", "run_solver",
    "solve_aco", "solve_alns", "solve_ga", "solve_qlearning", "solve_sarsa",
    "solve_sa", "solve_tabu", "branch_and_bound", "christofides",
    "convex_hull", "convex_hull_tour", "minimum_spanning_tree", "greedy_matching",
    "bound_cache", "root_lower_bound", "boltzmann_probabilities",
    "boltzmann_temperature", "q_update", "lundy_mees_step", "lundy_mees_beta",
    "metropolis_accept", "nn_seed_count", "update_weights",
]


@dataclass(frozen=True)
class RunOutcome:
    """Solver-agnostic result shape consumed by the benchmark harness."""

    best: list[int]
    best_cost: float
    elapsed: float
    evaluations: int | None = None
    nodes_expanded: int | None = None
    trajectory: list[tuple[float, float]] | None = None
    proven_optimal: bool | None = None


@dataclass(frozen=True)
class AlgorithmInfo:
    name: str
    kind: str  # stochastic | deterministic | exact
    variants: tuple[str, ...]
    tunable: bool


ALGORITHMS: dict[str, AlgorithmInfo] = {
    "aco": AlgorithmInfo("aco", "stochastic", ("baseline",), True),
    "ga": AlgorithmInfo("ga", "stochastic", GA_VARIANTS, True),
    "alns": AlgorithmInfo("alns", "stochastic", ("baseline",), True),
    "tabu": AlgorithmInfo("tabu", "stochastic", ("baseline",), True),
    "sa": AlgorithmInfo("sa", "stochastic", SA_VARIANTS, True),
    "qlearning": AlgorithmInfo("qlearning", "stochastic", ("baseline",), True),
    "sarsa": AlgorithmInfo("sarsa", "stochastic", SARSA_VARIANTS, True),
    "christofides": AlgorithmInfo("christofides", "deterministic", ("baseline",), False),
    "convex_hull": AlgorithmInfo("convex_hull", "deterministic", ("baseline",), False),
    "branch_and_bound": AlgorithmInfo("branch_and_bound", "exact", BB_VARIANTS, False),
}


def get_algorithm(name: str) -> AlgorithmInfo:
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise UnknownAlgorithm(f"unknown algorithm: {name!r}") from None


_PARAM_TYPES = {
    "aco": AcoParams,
    "ga": GaParams,
    "alns": AlnsParams,
    "tabu": TabuParams,
    "sa": SaParams,
    "qlearning": RlParams,
    "sarsa": RlParams,
}

_INT_FIELDS = {"ants", "population_size", "elite_count", "tenure", "episodes"}


def build_params(algorithm: str, values: dict):
    """Coerce a name -> value mapping into the solver's parameter bundle.

    Missing entries fall back to the original-configuration preset so callers
    may give only the knobs they care about.
    """
    cls = _PARAM_TYPES.get(algorithm)
    if cls is None:
        raise UnknownAlgorithm(f"algorithm {algorithm!r} takes no parameters")
    from ..tuning import preset  # deferred: tuning depends on this package

    merged = dict(preset(algorithm, "original").values)
    merged.update(values)
    coerced = {
        k: int(round(v)) if k in _INT_FIELDS else float(v) for k, v in merged.items()
    }
    return cls(**coerced)


def run_solver(
    algorithm: str,
    inst: Instance,
    matrix,
    values: dict | None,
    variant: str,
    budget: SolveBudget | None,
    seed: int,
) -> RunOutcome:
    """Dispatch one run; stochastic solvers require params and a budget."""
    info = get_algorithm(algorithm)
    if variant not in info.variants:
        raise ValueError(f"{algorithm} has no variant {variant!r}")

    if info.kind == "deterministic":
        started = time.perf_counter()
        tour = christofides(matrix) if algorithm == "christofides" else convex_hull_tour(inst, matrix)
        elapsed = time.perf_counter() - started
        cost = tour_length(tour, matrix)
        return RunOutcome(
            best=tour, best_cost=cost, elapsed=elapsed, evaluations=1,
            trajectory=[(elapsed, cost)],
        )

    if info.kind == "exact":
        time_cap = budget.time_limit if budget is not None else None
        opt = branch_and_bound(matrix, variant=variant, time_cap=time_cap)
        return RunOutcome(
            best=opt.best, best_cost=opt.best_cost, elapsed=opt.elapsed,
            nodes_expanded=opt.nodes_expanded, proven_optimal=opt.proven_optimal,
        )

    if budget is None:
        raise ValueError(f"{algorithm} needs a budget")
    params = build_params(algorithm, values or {})
    if algorithm == "aco":
        result = solve_aco(matrix, params, budget, seed)
    elif algorithm == "ga":
        result = solve_ga(matrix, params, budget, seed, variant=variant)
    elif algorithm == "alns":
        result = solve_alns(matrix, params, budget, seed)
    elif algorithm == "tabu":
        result = solve_tabu(matrix, params, budget, seed)
    elif algorithm == "sa":
        result = solve_sa(matrix, params, budget, seed, variant=variant)
    elif algorithm == "qlearning":
        result = solve_qlearning(matrix, params, budget, seed)
    else:
        result = solve_sarsa(matrix, params, budget, seed, variant=variant)
    return RunOutcome(
        best=result.best, best_cost=result.best_cost, elapsed=result.elapsed,
        evaluations=result.evaluations, trajectory=result.trajectory,
    )
