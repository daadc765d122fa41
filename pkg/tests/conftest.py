import numpy as np
import pytest

from tsplab import Instance, build_distance_matrix, generate_random_instance

TRI_COORDS = [(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)]
SQUARE_COORDS = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


@pytest.fixture
def tri345():
    """Right triangle with sides 3, 4, 5; the only tour costs 12."""
    inst = Instance(name="tri345", dimension=3, kind="EUC_2D", coords=list(TRI_COORDS))
    return inst, build_distance_matrix(inst)


@pytest.fixture
def unit_square():
    """Unit square corners in perimeter order; optimum tour cost 4."""
    inst = Instance(name="square", dimension=4, kind="EUC_2D",
                    coords=list(SQUARE_COORDS))
    return inst, build_distance_matrix(inst)


def random_matrix(n, seed, lo=0.0, hi=100.0):
    inst = generate_random_instance(n, seed, (lo, hi))
    return build_distance_matrix(inst)


@pytest.fixture
def rnd6():
    return random_matrix(6, 1)


def assert_symmetric_metric(d):
    a = np.asarray(d)
    assert np.allclose(a, a.T)
    assert np.all(np.diag(a) == 0)
    assert np.all(a >= 0)
