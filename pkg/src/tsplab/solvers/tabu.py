"""Tabu search over the 2-opt neighborhood.

Each iteration applies the best admissible reversal. A move is identified by
the unordered set of the four edges it exchanges (the two removed and the two
created), so a move and its exact undo share one tabu entry, held for
`tenure` iterations. Aspiration admits a tabu move that beats the global
best; if every move is tabu and none aspires, the best tabu move is taken so
the search never deadlocks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ..tours import nearest_neighbor_tour, tour_length
from .base import RunTracker, SolveBudget, SolveResult

_EPS = 1e-12


@dataclass(frozen=True)
class TabuParams:
    tenure: int

    def __post_init__(self):
        if self.tenure < 1:
            raise ValueError(f"tenure must be >= 1, got {self.tenure}")


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def move_key(order, i: int, j: int) -> frozenset:
    """Tabu attribute of reversing positions i..j: the exchanged edge pair."""
    n = len(order)
    a, b = order[i - 1], order[i]
    c, e = order[j], order[(j + 1) % n]
    return frozenset((_edge(a, b), _edge(c, e), _edge(a, c), _edge(b, e)))


def solve_tabu(d, p: TabuParams, b: SolveBudget, seed: int) -> SolveResult:
    n = len(d)
    dist = d.tolist() if isinstance(d, np.ndarray) else [list(row) for row in d]
    tracker = RunTracker(budget=b, seed=seed)
    _ = random.Random(seed)  # search itself is deterministic; seed kept for the record

    current = nearest_neighbor_tour(dist, start=0)
    current_cost = tour_length(current, dist)
    tracker.evaluations += 1
    tracker.offer(current, current_cost)

    tabu: dict[frozenset, int] = {}
    iteration = 0
    while not tracker.out_of_budget() and n >= 4:
        iteration += 1
        best_move = None  # (cost, i, j, key)
        best_any = None  # fallback when everything is tabu
        for i in range(n - 1):
            a = current[i - 1]
            bcity = current[i]
            d_ab = dist[a][bcity]
            for j in range(i + 1, n):
                if i == 0 and j == n - 1:
                    continue
                c = current[j]
                e = current[(j + 1) % n]
                delta = dist[a][c] + dist[bcity][e] - d_ab - dist[c][e]
                cand_cost = current_cost + delta
                if best_any is None or cand_cost < best_any[0] - _EPS:
                    best_any = (cand_cost, i, j)
                key = move_key(current, i, j)
                if tabu.get(key, 0) >= iteration and cand_cost >= tracker.best_cost - _EPS:
                    continue  # tabu and no aspiration
                if best_move is None or cand_cost < best_move[0] - _EPS:
                    best_move = (cand_cost, i, j, key)
        if best_move is None:
            cand_cost, i, j = best_any
            key = move_key(current, i, j)
            best_move = (cand_cost, i, j, key)
        cand_cost, i, j, key = best_move
        current[i : j + 1] = current[i : j + 1][::-1]
        current_cost = cand_cost
        tabu[key] = iteration + p.tenure
        tracker.evaluations += 1
        if current_cost < tracker.best_cost:
            # Re-cost exactly before recording: incremental deltas drift.
            current_cost = tour_length(current, dist)
            tracker.offer(current, current_cost)
        if len(tabu) > 4 * n * n:  # drop expired entries now and then
            tabu = {k: exp for k, exp in tabu.items() if exp >= iteration}
    # Below 4 cities the 2-opt neighborhood is empty and the NN tour is final.
    return tracker.result()
