import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tsplab import (
    DimensionMismatch,
    nearest_neighbor_tour,
    tour_length,
    two_opt,
    validate_tour,
)
from tsplab.instances import Instance, build_distance_matrix

from ._oracles import has_improving_two_opt, tour_cost
from .conftest import random_matrix


def test_tour_length_345(tri345):
    _, d = tri345
    assert tour_length([0, 1, 2], d) == 12.0


def test_tour_length_out_and_back():
    d = [[0.0, 5.0], [5.0, 0.0]]
    assert tour_length([0, 1], d) == 10.0


def test_tour_length_rotation_reversal_invariance(unit_square):
    _, d = unit_square
    base = tour_length([0, 1, 2, 3], d)
    for rot in range(4):
        order = [(i + rot) % 4 for i in range(4)]
        assert tour_length(order, d) == base
        assert tour_length(order[::-1], d) == base


def test_tour_length_dimension_mismatch(tri345):
    _, d = tri345
    with pytest.raises(DimensionMismatch):
        tour_length([0, 1], d)


def test_validate_tour_verdicts():
    assert validate_tour([0, 2, 1], 3).ok

    dup = validate_tour([0, 0, 1], 3)
    assert not dup.ok
    assert dup.problem == "duplicate index"
    assert dup.detail == 0

    short = validate_tour([0, 1], 3)
    assert not short.ok
    assert short.problem == "wrong length"

    out = validate_tour([0, 1, 7], 3)
    assert not out.ok
    assert out.problem == "out-of-range index"
    assert out.detail == 7


def test_nearest_neighbor_345(tri345):
    _, d = tri345
    tour = nearest_neighbor_tour(d, start=0)
    assert tour == [0, 1, 2]
    assert tour_length(tour, d) == 12.0


def test_nearest_neighbor_collinear():
    coords = [(0.0, 0.0), (1.0, 0.0), (3.0, 0.0), (7.0, 0.0)]
    inst = Instance(name="line", dimension=4, kind="EUC_2D", coords=coords)
    d = build_distance_matrix(inst)
    tour = nearest_neighbor_tour(d, start=0)
    assert tour == [0, 1, 2, 3]
    assert tour_length(tour, d) == 14.0


def test_nearest_neighbor_tie_takes_lower_index():
    # cities 1 and 2 both at distance 1 from city 0
    d = [
        [0.0, 1.0, 1.0],
        [1.0, 0.0, 2.0],
        [1.0, 2.0, 0.0],
    ]
    assert nearest_neighbor_tour(d, start=0) == [0, 1, 2]


def test_nearest_neighbor_seeded_start():
    d = random_matrix(7, 4)
    a = nearest_neighbor_tour(d, rng=random.Random(11))
    b = nearest_neighbor_tour(d, rng=random.Random(11))
    assert a == b
    assert validate_tour(a, 7).ok


def test_two_opt_uncrosses_square(unit_square):
    _, d = unit_square
    crossed = [0, 2, 1, 3]
    fixed = two_opt(crossed, d, mode="full")
    assert tour_length(fixed, d) == pytest.approx(4.0)


def test_two_opt_fixed_point(unit_square):
    _, d = unit_square
    tour = [0, 1, 2, 3]
    assert two_opt(tour, d, mode="full") == tour


def test_two_opt_full_reaches_local_optimum():
    d = random_matrix(8, 3)
    start = list(range(8))
    out = two_opt(start, d, mode="full")
    assert validate_tour(out, 8).ok
    assert not has_improving_two_opt(out, d)


@given(st.integers(4, 12), st.integers(0, 500), st.integers(0, 500))
@settings(max_examples=40, deadline=None)
def test_two_opt_never_worsens_and_stays_valid(n, seed, shuffle_seed):
    d = random_matrix(n, seed)
    order = list(range(n))
    random.Random(shuffle_seed).shuffle(order)
    before = tour_length(order, d)

    full = two_opt(order, d, mode="full")
    assert validate_tour(full, n).ok
    assert tour_length(full, d) <= before + 1e-9
    assert not has_improving_two_opt(full, d)

    rng = random.Random(shuffle_seed)
    sto = two_opt(order, d, mode="stochastic", rng=rng)
    assert validate_tour(sto, n).ok
    assert tour_length(sto, d) <= before + 1e-9


def test_two_opt_cost_agrees_with_oracle_cost():
    d = random_matrix(6, 8)
    order = [3, 1, 4, 0, 5, 2]
    assert tour_length(order, d) == pytest.approx(tour_cost(order, d), abs=1e-12)
