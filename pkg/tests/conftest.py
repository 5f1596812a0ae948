import cmath

import numpy as np
import pytest

from nevell.lattice import GAUSSIAN, HEXAGONAL, LatticeSpec

GENERIC = LatticeSpec(1.0, 0.3 + 1.1j)


def random_lattice(rng: np.random.Generator) -> LatticeSpec:
    """A well-conditioned random lattice, not reduced, with arbitrary size and rotation."""
    w1 = rng.uniform(0.5, 2.0) * cmath.exp(1j * rng.uniform(-np.pi, np.pi))
    tau = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.6, 1.8))
    return LatticeSpec(w1, tau * w1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def gaussian():
    return GAUSSIAN


@pytest.fixture
def hexagonal():
    return HEXAGONAL


@pytest.fixture
def generic():
    return GENERIC
