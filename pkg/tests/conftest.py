import numpy as np
import pytest

from spinlattice import random_admissible_triple


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def small_triple(rng):
    """Scalar-block class FG triple, moderate growth."""
    return random_admissible_triple(rng, 3, 1)


@pytest.fixture
def wide_triple(rng):
    """Class FG triple with m = 2."""
    return random_admissible_triple(rng, 4, 2)
