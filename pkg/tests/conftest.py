"""Shared fixtures: the worked example joints and a seeded random joint factory."""
from fractions import Fraction

import numpy as np
import pytest

from NMIS_Sklar.core.config import config
from NMIS_Sklar.distributions.joint import validate

F = Fraction


@pytest.fixture
def pA():
    """Positively dependent 2x2 joint [[2/5,1/10],[1/10,2/5]] on {0,1}^2."""
    return validate([[0, 1], [0, 1]], [["2/5", "1/10"], ["1/10", "2/5"]])


@pytest.fixture
def p_prime():
    """2x2 joint with the odds ratio of pA (16) but different margins."""
    return validate([[0, 1], [0, 1]], [["8/15", "2/15"], ["1/15", "4/15"]])


@pytest.fixture
def pB():
    """2x2 joint [[3/5,1/10],[1/10,1/5]] with non-uniform margins."""
    return validate([[0, 1], [0, 1]], [["3/5", "1/10"], ["1/10", "1/5"]])


@pytest.fixture
def independence():
    """Independent fair coins: all cells 1/4."""
    return validate([[0, 1], [0, 1]], [["1/4", "1/4"], ["1/4", "1/4"]])


@pytest.fixture
def uniform_cube():
    """2x2x2 joint with every cell 1/8."""
    return validate([[0, 1]] * 3, np.full((2, 2, 2), "1/8", dtype=object).tolist())


@pytest.fixture
def library_path():
    return config.library_path


def make_random_joint(rng, dims=None, max_size=5, zeros=True):
    """Rational joint from random integer counts on a small grid."""
    dims = dims or int(rng.integers(2, 4))
    shape = tuple(int(rng.integers(1, max_size + 1)) for _ in range(dims))
    low = 0 if zeros else 1
    counts = rng.integers(low, 10, size=shape)
    if counts.sum() == 0:
        counts.flat[0] = 1
    axes = [sorted(int(a) for a in rng.choice(50, size=n, replace=False)) for n in shape]
    return validate(axes, counts.astype(object).tolist(), counts=True)


@pytest.fixture
def random_joint():
    """Factory of seeded random rational joints: random_joint(seed, dims=None)."""

    def factory(seed, dims=None, max_size=5, zeros=True):
        return make_random_joint(np.random.default_rng(seed), dims, max_size, zeros)

    return factory
