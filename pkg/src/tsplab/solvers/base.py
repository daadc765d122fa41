"""Shared solver plumbing: budgets, results, and best-so-far tracking."""

from __future__ import annotations

import time
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SolveBudget:
    """Stop at whichever bound triggers first; at least one must be set.

    The time limit is a soft deadline: solvers check it between iterations,
    and every solver completes at least one full solution before honoring it.
    """

    time_limit: float | None = None
    max_evaluations: int | None = None

    def __post_init__(self):
        if self.time_limit is None and self.max_evaluations is None:
            raise ValueError("budget needs a time limit or an evaluation cap")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError(f"time limit must be positive, got {self.time_limit}")
        if self.max_evaluations is not None and self.max_evaluations < 1:
            raise ValueError(f"evaluation cap must be >= 1, got {self.max_evaluations}")


@dataclass
class SolveResult:
    """Outcome of one seeded solver run.

    trajectory holds (elapsed seconds, cost) at each strict improvement, so
    its costs are strictly decreasing and the last equals best_cost. All
    fields except elapsed and trajectory times are deterministic in the seed.
    """

    best: list[int]
    best_cost: float
    trajectory: list[tuple[float, float]]
    evaluations: int
    seed: int
    elapsed: float


@dataclass
class RunTracker:
    """Clock, evaluation counter, and strictly-improving incumbent record."""

    budget: SolveBudget
    seed: int
    started: float = field(default_factory=time.perf_counter)
    evaluations: int = 0
    best: list[int] | None = None
    best_cost: float = float("inf")
    trajectory: list[tuple[float, float]] = field(default_factory=list)

    def elapsed(self) -> float:
        return time.perf_counter() - self.started

    def offer(self, tour: list[int], cost: float) -> bool:
        """Record a candidate; keeps it only on strict improvement."""
        if cost < self.best_cost:
            self.best = list(tour)
            self.best_cost = cost
            self.trajectory.append((self.elapsed(), cost))
            return True
        return False

    def out_of_budget(self) -> bool:
        b = self.budget
        if b.max_evaluations is not None and self.evaluations >= b.max_evaluations:
            return True
        if b.time_limit is not None and self.elapsed() >= b.time_limit:
            return True
        return False

    def result(self) -> SolveResult:
        if self.best is None:
            raise RuntimeError("no solution was ever offered")
        return SolveResult(
            best=self.best,
            best_cost=self.best_cost,
            trajectory=self.trajectory,
            evaluations=self.evaluations,
            seed=self.seed,
            elapsed=self.elapsed(),
        )
