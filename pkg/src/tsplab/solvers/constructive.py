"""Deterministic constructive heuristics: Christofides-style and convex hull.

The matching step uses greedy shortest-edge selection rather than an exact
blossom matching, which weakens the classical 1.5 approximation guarantee to
2.0 on metric instances; repeated calls are byte-identical.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateInput, NoCoordinates
from ..instances import Instance

_EPS = 1e-12


def minimum_spanning_tree(d) -> list[tuple[int, int, float]]:
    """Prim's algorithm from city 0; ties break to the lowest index.

    Returns (parent, child, weight) edges in the order they were added.
    """
    dist = np.asarray(d, dtype=float)
    n = len(dist)
    in_tree = np.zeros(n, dtype=bool)
    best = dist[0].copy()
    parent = np.zeros(n, dtype=int)
    in_tree[0] = True
    best[0] = np.inf
    edges = []
    for _ in range(n - 1):
        v = int(np.argmin(np.where(in_tree, np.inf, best)))
        edges.append((int(parent[v]), v, float(dist[parent[v]][v])))
        in_tree[v] = True
        closer = ~in_tree & (dist[v] < best)
        parent[closer] = v
        best = np.where(closer, dist[v], best)
        best[v] = np.inf
    return edges


def greedy_matching(vertices: list[int], d) -> list[tuple[int, int]]:
    """Pair up vertices scanning all pairs by ascending weight (then index)."""
    pairs = sorted(
        ((float(d[u][v]), u, v) for i, u in enumerate(vertices) for v in vertices[i + 1 :]),
    )
    matched: set[int] = set()
    matching = []
    for _, u, v in pairs:
        if u not in matched and v not in matched:
            matching.append((u, v))
            matched.add(u)
            matched.add(v)
    return matching


def christofides(d) -> list[int]:
    """MST + greedy matching on odd-degree vertices + Euler circuit + shortcut."""
    n = len(d)
    if n == 2:
        return [0, 1]
    mst = minimum_spanning_tree(d)
    degree = [0] * n
    adjacency: dict[int, list[int]] = {v: [] for v in range(n)}
    for u, v, _ in mst:
        degree[u] += 1
        degree[v] += 1
        adjacency[u].append(v)
        adjacency[v].append(u)
    odd = [v for v in range(n) if degree[v] % 2 == 1]
    for u, v in greedy_matching(odd, d):
        adjacency[u].append(v)
        adjacency[v].append(u)
    circuit = _euler_circuit(adjacency, start=0)
    seen = set()
    tour = []
    for city in circuit:
        if city not in seen:
            seen.add(city)
            tour.append(city)
    return tour


def _euler_circuit(adjacency: dict[int, list[int]], start: int) -> list[int]:
    # Hierholzer on a multigraph with all degrees even; neighbors taken in
    # ascending order so the circuit is deterministic.
    adj = {v: sorted(neighbors, reverse=True) for v, neighbors in adjacency.items()}
    stack = [start]
    circuit = []
    while stack:
        v = stack[-1]
        if adj[v]:
            u = adj[v].pop()
            adj[u].remove(v)
            stack.append(u)
        else:
            circuit.append(stack.pop())
    return circuit[::-1]


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list[int]:
    """Andrew monotone chain; counter-clockwise from the lowest-(x, y) point.

    Collinear boundary points are excluded. All-collinear input raises
    DegenerateInput carrying the two extreme indices.
    """
    if len(points) < 3:
        raise ValueError(f"need at least 3 points, got {len(points)}")
    order = sorted(range(len(points)), key=lambda i: (points[i][0], points[i][1], i))
    lower: list[int] = []
    for i in order:
        while len(lower) >= 2 and _cross(points[lower[-2]], points[lower[-1]], points[i]) <= _EPS:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(order):
        while len(upper) >= 2 and _cross(points[upper[-2]], points[upper[-1]], points[i]) <= _EPS:
            upper.pop()
        upper.append(i)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput(
            "all points collinear", extremes=(order[0], order[-1])
        )
    return hull


def convex_hull_tour(inst: Instance, d, criterion: str = "ratio") -> list[int]:
    """Hull cycle plus cheapest-insertion of the interior points.

    criterion="ratio" minimizes (d[i][k] + d[k][j]) / d[i][j] over uninserted
    cities k and tour edges (i, j); "detour" minimizes the absolute detour.
    Ties go to the lowest city index. Hull vertices keep their cyclic order.
    """
    if inst.coords is None:
        raise NoCoordinates(f"instance {inst.name} has no coordinates")
    if criterion not in ("ratio", "detour"):
        raise ValueError(f"unknown insertion criterion: {criterion!r}")
    n = inst.dimension
    if n == 2:
        return [0, 1]
    try:
        tour = convex_hull(inst.coords)
    except DegenerateInput as exc:
        tour = list(exc.extremes)  # degenerate hull: fall back to the two extremes
    remaining = sorted(set(range(n)) - set(tour))
    while remaining:
        best = None  # (score, city, position)
        m = len(tour)
        for k in remaining:
            for pos in range(m):
                i, j = tour[pos - 1], tour[pos]
                detour = d[i][k] + d[k][j] - d[i][j]
                score = (d[i][k] + d[k][j]) / max(d[i][j], _EPS) if criterion == "ratio" else detour
                if best is None or score < best[0] - _EPS:
                    best = (score, k, pos)
        _, k, pos = best
        tour.insert(pos, k)
        remaining.remove(k)
    return tour
