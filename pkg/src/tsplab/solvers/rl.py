"""Tabular Q-Learning and SARSA tour constructors.

The state is the current city only; actions are the unvisited cities. Each
step earns reward -d_norm[s][a] where d_norm is the distance matrix divided
by its largest entry, so every reward lies in [-1, 0]. The terminal step
folds in the closing-edge reward and bootstraps nothing. Training returns
the best tour seen across episodes; a final greedy rollout is offered to the
tracker as well so it lands in the trajectory whenever it improves.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from ..errors import EmptyInput, NonFiniteInput
from ..tours import tour_length
from .base import RunTracker, SolveBudget, SolveResult

SARSA_VARIANTS = ("baseline", "boltzmann_o1")

_TINY = 1e-12
# Boltzmann temperature anneals linearly across episodes over this range.
BOLTZMANN_T_START = 1.0
BOLTZMANN_T_END = 0.1


@dataclass(frozen=True)
class RlParams:
    learning_rate: float
    discount: float
    epsilon: float
    episodes: int

    def __post_init__(self):
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError(f"learning_rate must be in (0,1], got {self.learning_rate}")
        if not 0.0 <= self.discount < 1.0:
            raise ValueError(f"discount must be in [0,1), got {self.discount}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0,1], got {self.epsilon}")
        if self.episodes < 1:
            raise ValueError(f"episodes must be >= 1, got {self.episodes}")


def boltzmann_probabilities(q, temperature: float) -> np.ndarray:
    """Max-shifted softmax over q/temperature; sums to 1 within 1e-12."""
    arr = np.asarray(q, dtype=float)
    if arr.size == 0:
        raise EmptyInput("empty preference vector")
    if not np.isfinite(arr).all():
        raise NonFiniteInput("preference vector contains NaN or infinity")
    if not temperature > 0.0:
        raise ValueError(f"temperature must be positive, got {temperature}")
    scaled = arr / temperature
    shifted = scaled - scaled.max()
    exp = np.exp(shifted)
    return exp / exp.sum()


def boltzmann_temperature(episode: int, total_episodes: int) -> float:
    """Linear anneal from 1.0 to 0.1 across the planned episode count."""
    if total_episodes <= 1:
        return BOLTZMANN_T_START
    frac = episode / (total_episodes - 1)
    return BOLTZMANN_T_START + (BOLTZMANN_T_END - BOLTZMANN_T_START) * frac


def q_update(value: float, lr: float, reward: float, df: float, bootstrap: float) -> float:
    """One temporal-difference update: value + lr*(reward + df*bootstrap - value)."""
    return value + lr * (reward + df * bootstrap - value)


def solve_qlearning(d, p: RlParams, b: SolveBudget, seed: int) -> SolveResult:
    return _train(d, p, b, seed, on_policy=False, boltzmann=False)


def solve_sarsa(d, p: RlParams, b: SolveBudget, seed: int, variant: str = "baseline") -> SolveResult:
    if variant not in SARSA_VARIANTS:
        raise ValueError(f"unknown SARSA variant: {variant!r}")
    return _train(d, p, b, seed, on_policy=True, boltzmann=variant == "boltzmann_o1")


def _train(d, p: RlParams, b: SolveBudget, seed: int, on_policy: bool, boltzmann: bool) -> SolveResult:
    n = len(d)
    dist = d.tolist() if isinstance(d, np.ndarray) else [list(row) for row in d]
    scale = max(max(max(row) for row in dist), _TINY)
    dn = [[v / scale for v in row] for row in dist]
    rng = random.Random(seed)
    tracker = RunTracker(budget=b, seed=seed)
    q = [[0.0] * n for _ in range(n)]
    lr, df = p.learning_rate, p.discount

    for episode in range(p.episodes):
        temperature = boltzmann_temperature(episode, p.episodes) if boltzmann else None
        start = rng.randrange(n)
        unvisited = [c for c in range(n) if c != start]
        tour = [start]
        s = start
        a = _select(q, s, unvisited, p.epsilon, temperature, rng) if unvisited else None
        while unvisited:
            unvisited.remove(a)
            tour.append(a)
            r = -dn[s][a]
            if not unvisited:
                # Terminal: fold in the closing edge, bootstrap nothing.
                q[s][a] = q_update(q[s][a], lr, r - dn[a][start], 0.0, 0.0)
                break
            a_next = _select(q, a, unvisited, p.epsilon, temperature, rng)
            if on_policy:
                bootstrap = q[a][a_next]
            else:
                bootstrap = max(q[a][c] for c in unvisited)
            q[s][a] = q_update(q[s][a], lr, r, df, bootstrap)
            s, a = a, a_next
        cost = tour_length(tour, dist)
        tracker.evaluations += 1
        tracker.offer(tour, cost)
        if tracker.out_of_budget():
            break

    if not tracker.out_of_budget():
        greedy = _greedy_rollout(q, n)
        tracker.evaluations += 1
        tracker.offer(greedy, tour_length(greedy, dist))
    return tracker.result()


def _select(q, s, unvisited, epsilon, temperature, rng) -> int:
    if temperature is not None:
        prefs = [q[s][c] for c in unvisited]
        probs = boltzmann_probabilities(prefs, temperature)
        r = rng.random()
        acc = 0.0
        for city, prob in zip(unvisited, probs):
            acc += prob
            if r < acc:
                return city
        return unvisited[-1]
    if rng.random() < epsilon:
        return unvisited[rng.randrange(len(unvisited))]
    return max(unvisited, key=lambda c: (q[s][c], -c))  # greedy, lowest index on ties


def _greedy_rollout(q, n) -> list[int]:
    unvisited = list(range(1, n))
    tour = [0]
    s = 0
    while unvisited:
        nxt = max(unvisited, key=lambda c: (q[s][c], -c))
        unvisited.remove(nxt)
        tour.append(nxt)
        s = nxt
    return tour
