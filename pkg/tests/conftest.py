import numpy as np
import pytest

from chaoskit.tensor import Kernel, random_kernel


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def e11():
    """e1 (x) e1bar over C^1, so I_{1,1} = |zeta|^2 - 1."""
    return Kernel.basis(1, [0], [0])


@pytest.fixture
def kernel_factory(rng):
    def make(d, m, n):
        return random_kernel(rng, d, m, n)
    return make


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: replicated statistical runs (deselect with -m 'not slow')")
