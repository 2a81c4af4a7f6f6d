import numpy as np
import pytest

from graphwit.acceptance import _random_connected_graph


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_graph(rng):
    def make(n=None):
        n = n or int(rng.integers(2, 7))
        return _random_connected_graph(rng, n)

    return make
