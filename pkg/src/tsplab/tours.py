"""Tour evaluation, validation, nearest-neighbor construction, and 2-opt.

Tours are stored open (lists of city indices); the closing edge back to the
first city is implicit in every cost computation. Tie-breaking is always by
lowest index so seeded runs reproduce exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

_EPS = 1e-12

Tour = list  # alias for readability in signatures


@dataclass(frozen=True)
class TourCheck:
    """Validation verdict: ok, or the first violation found."""

    ok: bool
    problem: str | None = None  # wrong length | duplicate index | out-of-range index
    detail: int | None = None  # offending value (or actual length)


def validate_tour(order, n: int) -> TourCheck:
    """Valid iff order is a permutation of 0..n-1; names the first violation."""
    if len(order) != n:
        return TourCheck(False, "wrong length", len(order))
    seen = [False] * n
    for v in order:
        if not isinstance(v, (int, np.integer)) or v < 0 or v >= n:
            detail = int(v) if isinstance(v, (int, np.integer)) else None
            return TourCheck(False, "out-of-range index", detail)
        if seen[v]:
            return TourCheck(False, "duplicate index", int(v))
        seen[v] = True
    return TourCheck(True)


def tour_length(order, d) -> float:
    """Sum of consecutive legs plus the closing edge."""
    n = len(d)
    if len(order) != n:
        raise DimensionMismatch(f"tour length {len(order)} vs matrix dimension {n}")
    total = 0.0
    prev = order[-1]
    for city in order:
        total += d[prev][city]
        prev = city
    return float(total)


def nearest_neighbor_tour(d, start: int = 0, rng: random.Random | None = None) -> list[int]:
    """Greedy construction; ties go to the lowest index.

    When rng is given the start city is drawn uniformly and `start` is ignored.
    """
    n = len(d)
    if rng is not None:
        start = rng.randrange(n)
    if not 0 <= start < n:
        raise ValueError(f"start {start} outside [0, {n})")
    dist = np.asarray(d, dtype=float)
    visited = np.zeros(n, dtype=bool)
    tour = [start]
    visited[start] = True
    current = start
    for _ in range(n - 1):
        row = np.where(visited, np.inf, dist[current])
        nxt = int(np.argmin(row))  # argmin returns the lowest index on ties
        tour.append(nxt)
        visited[nxt] = True
        current = nxt
    return tour


def reversal_delta(order, d, i: int, j: int) -> float:
    """Cost change of reversing positions i..j (0 <= i < j <= n-1)."""
    n = len(order)
    a, b = order[i - 1], order[i]
    c, e = order[j], order[(j + 1) % n]
    return d[a][c] + d[b][e] - d[a][b] - d[c][e]


def two_opt(
    order,
    d,
    mode: str = "full",
    tries: int | None = None,
    rng: random.Random | None = None,
) -> list[int]:
    """2-opt local search; never increases cost.

    mode="full": first-improvement sweeps until no improving reversal exists.
    mode="stochastic": samples `tries` random reversal pairs (default n),
    applying each improving one; requires rng.
    """
    n = len(order)
    tour = list(order)
    if n < 4:
        return tour
    dl = d.tolist() if isinstance(d, np.ndarray) else d
    if mode == "full":
        improved = True
        while improved:
            improved = False
            for i in range(n - 1):
                for j in range(i + 1, n):
                    if i == 0 and j == n - 1:
                        continue  # reversing the whole tour is a no-op
                    if reversal_delta(tour, dl, i, j) < -_EPS:
                        tour[i : j + 1] = tour[i : j + 1][::-1]
                        improved = True
        return tour
    if mode == "stochastic":
        if rng is None:
            raise ValueError("stochastic mode needs an rng")
        if tries is None:
            tries = n
        for _ in range(tries):
            i = rng.randrange(n - 1)
            j = rng.randrange(i + 1, n)
            if i == 0 and j == n - 1:
                continue
            if reversal_delta(tour, dl, i, j) < -_EPS:
                tour[i : j + 1] = tour[i : j + 1][::-1]
        return tour
    raise ValueError(f"unknown two_opt mode: {mode!r}")
