"""Ant System for the TSP.

Each of `ants` ants builds a tour choosing the next unvisited city with
probability proportional to tau^alpha * (1/d)^beta; after every iteration the
pheromone matrix evaporates by (1 - evaporation_rate) and each ant deposits
Q / tour_cost on the edges it used. Q is the mean distance-matrix entry so
the pheromone scale tracks the instance scale.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ..tours import tour_length
from .base import RunTracker, SolveBudget, SolveResult

_TINY = 1e-12


@dataclass(frozen=True)
class AcoParams:
    ants: int
    alpha: float
    beta: float
    evaporation_rate: float

    def __post_init__(self):
        if self.ants < 1:
            raise ValueError(f"ants must be >= 1, got {self.ants}")
        if not 0.0 < self.evaporation_rate < 1.0:
            raise ValueError(f"evaporation_rate must be in (0,1), got {self.evaporation_rate}")


def solve_aco(d, p: AcoParams, b: SolveBudget, seed: int) -> SolveResult:
    n = len(d)
    dist = np.asarray(d, dtype=float)
    rng = random.Random(seed)
    tracker = RunTracker(budget=b, seed=seed)

    eta = 1.0 / np.maximum(dist, _TINY)  # heuristic desirability
    np.fill_diagonal(eta, 0.0)
    tau = np.ones((n, n))
    q_deposit = float(dist.mean())

    first_tour_done = False
    while True:
        iteration_tours = []
        for _ in range(p.ants):
            tour = _construct(dist, tau, eta, p.alpha, p.beta, n, rng)
            cost = tour_length(tour, dist)
            tracker.evaluations += 1
            tracker.offer(tour, cost)
            iteration_tours.append((tour, cost))
            first_tour_done = True
            if first_tour_done and tracker.out_of_budget():
                break
        tau *= 1.0 - p.evaporation_rate
        for tour, cost in iteration_tours:
            deposit = q_deposit / max(cost, _TINY)
            prev = tour[-1]
            for city in tour:
                tau[prev][city] += deposit
                tau[city][prev] += deposit
                prev = city
        if tracker.out_of_budget():
            return tracker.result()


def _construct(dist, tau, eta, alpha, beta, n, rng) -> list[int]:
    start = rng.randrange(n)
    unvisited = list(range(n))
    unvisited.remove(start)
    tour = [start]
    current = start
    while unvisited:
        idx = np.array(unvisited)
        weights = tau[current, idx] ** alpha * eta[current, idx] ** beta
        total = float(weights.sum())
        if not np.isfinite(total) or total <= 0.0:
            nxt = unvisited[0]  # lowest index fallback on degenerate weights
        else:
            r = rng.random() * total
            cum = np.cumsum(weights)
            nxt = unvisited[int(np.searchsorted(cum, r, side="right").clip(0, len(unvisited) - 1))]
        tour.append(nxt)
        unvisited.remove(nxt)
        current = nxt
    return tour
