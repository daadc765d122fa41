import statistics

import pytest

from tsplab import (
    bound_cache,
    branch_and_bound,
    nearest_neighbor_tour,
    root_lower_bound,
    tour_length,
    validate_tour,
)

from ._oracles import RND12_S3_OPTIMUM, brute_force_optimum, held_karp_optimum
from .conftest import random_matrix


def test_bound_cache_345(tri345):
    _, d = tri345
    min1, min2 = bound_cache(d)
    assert min1 == [3.0, 3.0, 4.0]
    assert min2 == [4.0, 5.0, 5.0]
    assert root_lower_bound(d) == pytest.approx(12.0)


@pytest.mark.parametrize("variant", ["baseline", "enhanced_r1"])
def test_345_triangle_proven(tri345, variant):
    _, d = tri345
    result = branch_and_bound(d, variant=variant)
    assert result.best_cost == pytest.approx(12.0)
    assert result.proven_optimal
    assert validate_tour(result.best, 3).ok
    assert result.nodes_expanded > 0
    assert result.elapsed >= 0.0


@pytest.mark.parametrize("n,seed", [(7, 0), (8, 1), (9, 2), (10, 3)])
def test_matches_exhaustive_enumeration(n, seed):
    d = random_matrix(n, seed)
    optimum = brute_force_optimum(d)
    for variant in ("baseline", "enhanced_r1"):
        result = branch_and_bound(d, variant=variant)
        assert result.proven_optimal
        assert result.best_cost == pytest.approx(optimum, rel=1e-9)
        assert tour_length(result.best, d) == pytest.approx(result.best_cost, rel=1e-12)


@pytest.mark.parametrize("n,seed", [(6, 4), (8, 5), (10, 6)])
def test_root_bound_never_exceeds_optimum(n, seed):
    d = random_matrix(n, seed)
    assert root_lower_bound(d) <= brute_force_optimum(d) + 1e-9


def test_frozen_12_city_instance():
    d = random_matrix(12, 3)
    assert held_karp_optimum(d) == pytest.approx(RND12_S3_OPTIMUM, rel=1e-12)
    result = branch_and_bound(d, variant="enhanced_r1")
    assert result.proven_optimal
    assert result.best_cost == pytest.approx(RND12_S3_OPTIMUM, rel=1e-9)


def test_enhanced_starts_from_nearest_neighbor():
    d = random_matrix(9, 7)
    nn_cost = tour_length(nearest_neighbor_tour(d, start=0), d)
    result = branch_and_bound(d, variant="enhanced_r1", node_cap=0)
    assert not result.proven_optimal
    assert result.best_cost == pytest.approx(nn_cost)
    assert validate_tour(result.best, 9).ok


def test_node_cap_returns_incumbent_without_error():
    d = random_matrix(11, 8)
    optimum = held_karp_optimum(d)
    for variant in ("baseline", "enhanced_r1"):
        result = branch_and_bound(d, variant=variant, node_cap=50)
        assert not result.proven_optimal
        assert result.nodes_expanded <= 51
        assert validate_tour(result.best, 11).ok
        assert result.best_cost >= optimum - 1e-9


def test_time_cap_stops_search():
    d = random_matrix(12, 3)
    result = branch_and_bound(d, variant="baseline", time_cap=0.0)
    assert not result.proven_optimal
    assert validate_tour(result.best, 12).ok
    assert result.best_cost >= RND12_S3_OPTIMUM - 1e-9


def test_two_cities():
    result = branch_and_bound([[0.0, 7.0], [7.0, 0.0]])
    assert result.best == [0, 1]
    assert result.best_cost == pytest.approx(14.0)
    assert result.proven_optimal


def test_unknown_variant():
    with pytest.raises(ValueError):
        branch_and_bound([[0.0, 1.0], [1.0, 0.0]], variant="fancy")


def test_deterministic_node_counts():
    d = random_matrix(10, 9)
    a = branch_and_bound(d, variant="enhanced_r1")
    b = branch_and_bound(d, variant="enhanced_r1")
    assert a.best == b.best
    assert a.best_cost == b.best_cost
    assert a.nodes_expanded == b.nodes_expanded


def test_enhanced_usually_expands_fewer_nodes():
    wins = []
    baseline_nodes = []
    enhanced_nodes = []
    for i, seed in enumerate(range(40, 48)):
        d = random_matrix(10 + i % 3, seed)
        base = branch_and_bound(d, variant="baseline")
        enh = branch_and_bound(d, variant="enhanced_r1")
        assert base.best_cost == pytest.approx(enh.best_cost, rel=1e-9)
        baseline_nodes.append(base.nodes_expanded)
        enhanced_nodes.append(enh.nodes_expanded)
        wins.append(enh.nodes_expanded <= base.nodes_expanded)
    assert sum(wins) >= 6
    assert statistics.median(enhanced_nodes) < statistics.median(baseline_nodes)
