"""Parameter spaces, shipped tuned presets, and a transparent racing tuner.

The preset table carries one tuned column per source configuration
(original, claude, gemini, llama, o1, r1) for each of the seven stochastic
algorithms. The race is a simplified stand-in for a full configurator: mean
rank plus one standard error decides eliminations round by round under an
exact run budget.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass, field

from .errors import BudgetTooSmall, NoSuchColumn, UnknownAlgorithm
from .instances import Instance, build_distance_matrix
from .seeding import stable_hash
from .solvers import SolveBudget, run_solver

PRESET_COLUMNS = ("original", "claude", "gemini", "llama", "o1", "r1")


@dataclass(frozen=True)
class ParamDef:
    name: str
    kind: str  # "int" | "real"
    lo: float
    hi: float

    def __post_init__(self):
        if self.kind not in ("int", "real"):
            raise ValueError(f"kind must be int or real, got {self.kind!r}")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class ParamSpace:
    algorithm: str
    params: tuple[ParamDef, ...]


@dataclass(frozen=True)
class ParamConfig:
    algorithm: str
    values: dict
    provenance: str


SPACES: dict[str, ParamSpace] = {
    "aco": ParamSpace("aco", (
        ParamDef("ants", "int", 2, 20),
        ParamDef("alpha", "real", 1.0, 2.0),
        ParamDef("beta", "real", 1.0, 2.0),
        ParamDef("evaporation_rate", "real", 0.01, 0.3),
    )),
    "ga": ParamSpace("ga", (
        ParamDef("population_size", "int", 5, 100),
        ParamDef("mutation_rate", "real", 0.01, 0.2),
        ParamDef("elite_count", "int", 1, 5),
    )),
    "alns": ParamSpace("alns", (
        ParamDef("removal_fraction", "real", 0.05, 0.3),
        ParamDef("reaction_factor", "real", 0.01, 0.3),
    )),
    "tabu": ParamSpace("tabu", (
        ParamDef("tenure", "int", 3, 30),
    )),
    "sa": ParamSpace("sa", (
        ParamDef("t_start", "real", 1.0, 50.0),
        ParamDef("t_final", "real", 0.0001, 0.1),
        ParamDef("cooling_rate", "real", 0.8, 0.99),
    )),
    "qlearning": ParamSpace("qlearning", (
        ParamDef("learning_rate", "real", 0.01, 0.5),
        ParamDef("discount", "real", 0.8, 0.99),
        ParamDef("epsilon", "real", 0.01, 0.3),
        ParamDef("episodes", "int", 1000, 10000),
    )),
    "sarsa": ParamSpace("sarsa", (
        ParamDef("learning_rate", "real", 0.01, 0.5),
        ParamDef("discount", "real", 0.8, 0.99),
        ParamDef("epsilon", "real", 0.01, 0.3),
        ParamDef("episodes", "int", 100, 5000),
    )),
}

# Tuned values per source configuration, column order:
# original, claude, gemini, llama, o1, r1.
_PRESET_TABLE: dict[str, dict[str, tuple]] = {
    "aco": {
        "ants": (7, 4, 2, 3, 17, 20),
        "alpha": (1.34, 1.72, 1.67, 1.46, 1.72, 1.22),
        "beta": (1.59, 1.24, 1.98, 1.97, 1.93, 1.55),
        "evaporation_rate": (0.24, 0.12, 0.24, 0.29, 0.06, 0.05),
    },
    "ga": {
        "population_size": (97, 14, 97, 84, 55, 58),
        "mutation_rate": (0.02, 0.04, 0.16, 0.16, 0.01, 0.13),
        "elite_count": (4, 2, 5, 2, 3, 5),
    },
    "alns": {
        "removal_fraction": (0.27, 0.05, 0.26, 0.29, 0.22, 0.29),
        "reaction_factor": (0.27, 0.25, 0.04, 0.2, 0.27, 0.02),
    },
    "tabu": {
        "tenure": (8, 12, 30, 15, 10, 9),
    },
    "sa": {
        "t_start": (12, 49, 9, 30, 35, 50),
        "t_final": (0.0547, 0.0464, 0.074, 0.056, 0.0433, 0.048),
        "cooling_rate": (0.9895, 0.8732, 0.8956, 0.8131, 0.9154, 0.8777),
    },
    "qlearning": {
        "learning_rate": (0.44, 0.15, 0.26, 0.49, 0.46, 0.34),
        "discount": (0.97, 0.82, 0.98, 0.87, 0.98, 0.82),
        "epsilon": (0.09, 0.28, 0.03, 0.24, 0.21, 0.13),
        "episodes": (4266, 1082, 4906, 2474, 1294, 1989),
    },
    "sarsa": {
        "learning_rate": (0.04, 0.36, 0.49, 0.19, 0.41, 0.29),
        "discount": (0.86, 0.91, 0.8, 0.88, 0.83, 0.87),
        "epsilon": (0.23, 0.18, 0.16, 0.08, 0.12, 0.16),
        "episodes": (105, 156, 1850, 137, 124, 1711),
    },
}


def parameter_space(algorithm: str) -> ParamSpace:
    if algorithm not in SPACES:
        raise UnknownAlgorithm(f"no parameter space for algorithm {algorithm!r}")
    return SPACES[algorithm]


def preset(algorithm: str, column: str) -> ParamConfig:
    """The shipped tuned values for one algorithm and source column."""
    if algorithm not in _PRESET_TABLE:
        raise UnknownAlgorithm(f"no presets for algorithm {algorithm!r}")
    if column not in PRESET_COLUMNS:
        raise NoSuchColumn(f"no preset column {column!r}; one of {PRESET_COLUMNS}")
    idx = PRESET_COLUMNS.index(column)
    values = {name: cells[idx] for name, cells in _PRESET_TABLE[algorithm].items()}
    return ParamConfig(algorithm=algorithm, values=values, provenance=f"preset({column})")


def sample_config(space: ParamSpace, seed: int) -> ParamConfig:
    """Uniform independent draw per parameter; deterministic in seed."""
    rng = random.Random(seed)
    values = {}
    for p in space.params:
        if p.kind == "int":
            values[p.name] = rng.randint(int(p.lo), int(p.hi))
        else:
            values[p.name] = p.lo + (p.hi - p.lo) * rng.random()
    return ParamConfig(algorithm=space.algorithm, values=values, provenance=f"sampled(seed={seed})")


@dataclass
class RaceState:
    """Bookkeeping of one race: survivors, per-round costs and ranks, budget."""

    configs: list[ParamConfig]
    alive: list[int]
    budget: int
    spent: int = 0
    rounds: int = 0
    costs: dict[int, list[float]] = field(default_factory=dict)
    ranks: dict[int, list[float]] = field(default_factory=dict)


def race(
    algorithm: str,
    space: ParamSpace | None = None,
    instances: list[Instance] | None = None,
    budget: int = 500,
    candidates: int = 16,
    seed: int = 0,
    time_scale: float = 1.0,
    variant: str = "baseline",
    runner=None,
    return_state: bool = False,
):
    """Race sampled configs on the training instances under an exact run budget.

    Each round draws one new (instance, seed) pair shared by all survivors;
    a config is eliminated once its mean rank trails the best mean rank by
    more than one standard error of the best config's ranks. The survivor
    with the best mean cost wins. `runner(config, instance, run_seed)` can be
    injected for tests; the default builds the distance matrix and runs the
    real solver with the protocol time limit.
    """
    if space is None:
        space = parameter_space(algorithm)
    if candidates < 2:
        raise ValueError(f"candidates must be >= 2, got {candidates}")
    if not instances:
        raise ValueError("need at least one training instance")
    if budget < candidates * len(instances):
        raise BudgetTooSmall(
            f"budget {budget} < candidates x instances = {candidates * len(instances)}"
        )
    if runner is None:
        runner = _default_runner(algorithm, variant, time_scale)

    configs = [sample_config(space, stable_hash(seed, "candidate", i)) for i in range(candidates)]
    state = RaceState(configs=configs, alive=list(range(candidates)), budget=budget)
    for i in range(candidates):
        state.costs[i] = []
        state.ranks[i] = []

    while len(state.alive) > 1 and state.spent + len(state.alive) <= budget:
        inst = instances[state.rounds % len(instances)]
        run_seed = stable_hash(seed, "round", state.rounds)
        round_costs = []
        for i in state.alive:
            cost = runner(state.configs[i], inst, run_seed)
            state.costs[i].append(cost)
            round_costs.append((cost, i))
            state.spent += 1
        for rank, i in _ranked(round_costs):
            state.ranks[i].append(rank)
        state.rounds += 1
        if state.rounds >= 2:
            means = {i: statistics.fmean(state.ranks[i]) for i in state.alive}
            best_i = min(state.alive, key=lambda i: (means[i], i))
            se = statistics.stdev(state.ranks[best_i]) / math.sqrt(state.rounds)
            state.alive = [i for i in state.alive if means[i] <= means[best_i] + se or i == best_i]

    winner = min(state.alive, key=lambda i: (statistics.fmean(state.costs[i]), i))
    cfg = state.configs[winner]
    final = ParamConfig(
        algorithm=cfg.algorithm,
        values=dict(cfg.values),
        provenance=f"raced(seed={seed},rounds={state.rounds},runs={state.spent})",
    )
    return (final, state) if return_state else final


def _ranked(round_costs: list[tuple[float, int]]):
    """Competition ranks with ties averaged."""
    ordered = sorted(round_costs)
    out = []
    pos = 0
    while pos < len(ordered):
        end = pos
        while end + 1 < len(ordered) and ordered[end + 1][0] == ordered[pos][0]:
            end += 1
        avg_rank = (pos + end) / 2.0 + 1.0
        for k in range(pos, end + 1):
            out.append((avg_rank, ordered[k][1]))
        pos = end + 1
    return out


def _default_runner(algorithm: str, variant: str, time_scale: float):
    def run(config: ParamConfig, inst: Instance, run_seed: int) -> float:
        matrix = build_distance_matrix(inst)
        limit = max(1, math.ceil(time_scale * inst.dimension))  # same rule as the harness
        outcome = run_solver(
            algorithm, inst, matrix, config.values, variant,
            SolveBudget(time_limit=float(limit)), run_seed,
        )
        return outcome.best_cost

    return run
