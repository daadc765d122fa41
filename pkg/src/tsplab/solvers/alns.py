"""Adaptive large neighborhood search for the TSP.

Starts from a nearest-neighbor tour. Each iteration removes
ceil(removal_fraction * n) cities with a destroy operator drawn by adaptive
roulette over {random removal, worst-contribution removal}, repairs with
greedy cheapest insertion, and accepts any non-worsening tour. Both operator
weights are refreshed every iteration: w <- (1-rho) w + rho * score, where
the operator used earns 3 on a new global best, 1 on acceptance, 0 otherwise,
and the unused operator earns 0.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from ..tours import nearest_neighbor_tour, tour_length
from .base import RunTracker, SolveBudget, SolveResult

_SCORES = (3.0, 1.0, 0.0)  # new global best, accepted, rejected

DESTROY_OPERATORS = ("random_removal", "worst_contribution_removal")


@dataclass(frozen=True)
class AlnsParams:
    removal_fraction: float
    reaction_factor: float

    def __post_init__(self):
        if not 0.0 < self.removal_fraction < 1.0:
            raise ValueError(f"removal_fraction must be in (0,1), got {self.removal_fraction}")
        if not 0.0 < self.reaction_factor < 1.0:
            raise ValueError(f"reaction_factor must be in (0,1), got {self.reaction_factor}")


def update_weights(weights: list[float], used: int, score: float, reaction: float) -> list[float]:
    """One adaptive-roulette refresh; the unused operator earns score 0."""
    return [
        (1.0 - reaction) * w + reaction * (score if k == used else 0.0)
        for k, w in enumerate(weights)
    ]


def solve_alns(d, p: AlnsParams, b: SolveBudget, seed: int) -> SolveResult:
    n = len(d)
    dist = d.tolist() if isinstance(d, np.ndarray) else [list(row) for row in d]
    rng = random.Random(seed)
    tracker = RunTracker(budget=b, seed=seed)

    current = nearest_neighbor_tour(dist, start=0)
    current_cost = tour_length(current, dist)
    tracker.evaluations += 1
    tracker.offer(current, current_cost)

    weights = [1.0, 1.0]
    k_remove = min(max(1, math.ceil(p.removal_fraction * n)), n - 1)

    while not tracker.out_of_budget():
        op = _roulette(weights, rng)
        if op == 0:
            removed = rng.sample(current, k_remove)
        else:
            removed = _worst_contributors(current, dist, k_remove)
        removed_set = set(removed)
        partial = [c for c in current if c not in removed_set]
        candidate = _cheapest_insertion(partial, sorted(removed_set), dist)
        cost = tour_length(candidate, dist)
        tracker.evaluations += 1
        is_best = cost < tracker.best_cost
        accepted = cost <= current_cost
        tracker.offer(candidate, cost)
        if accepted:
            current, current_cost = candidate, cost
        score = _SCORES[0] if is_best else (_SCORES[1] if accepted else _SCORES[2])
        weights = update_weights(weights, op, score, p.reaction_factor)
    return tracker.result()


def _roulette(weights, rng) -> int:
    total = sum(weights)
    if total <= 0.0:
        return 0
    r = rng.random() * total
    return 0 if r < weights[0] else 1


def _worst_contributors(tour, dist, k) -> list[int]:
    n = len(tour)
    contributions = []
    for pos, city in enumerate(tour):
        a, bnext = tour[pos - 1], tour[(pos + 1) % n]
        detour = dist[a][city] + dist[city][bnext] - dist[a][bnext]
        contributions.append((-detour, city))
    contributions.sort()
    return [city for _, city in contributions[:k]]


def _cheapest_insertion(partial: list[int], pending: list[int], dist) -> list[int]:
    """Insert each pending city at the globally cheapest (city, position) pair."""
    tour = list(partial)
    pending = list(pending)
    while pending:
        best = None  # (delta, city, position)
        m = len(tour)
        for city in pending:
            if m == 1:
                delta = 2.0 * dist[tour[0]][city]
                if best is None or delta < best[0] - 1e-12:
                    best = (delta, city, 1)
                continue
            for pos in range(m):
                a, bnext = tour[pos - 1], tour[pos]
                delta = dist[a][city] + dist[city][bnext] - dist[a][bnext]
                if best is None or delta < best[0] - 1e-12:
                    best = (delta, city, pos)
        _, city, pos = best
        tour.insert(pos, city)
        pending.remove(city)
    return tour
