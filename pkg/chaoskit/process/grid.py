"""Uniform time grids and the fractional inner product of their step functions.

For H > 1/2 the inner product of indicator functions is
<1_[a,b), 1_[c,d)>_phi = 1/2 (|b-c|^{2H} + |a-d|^{2H} - |a-c|^{2H} - |b-d|^{2H}),
which for H = 1/2 reduces to the length of the overlap.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import linalg

from ..errors import ConditioningError, DomainError

logger = logging.getLogger(__name__)

# Dense Cholesky factors above this size are slow and large; warn once per size.
LARGE_GRAM = 4096


@dataclass(frozen=True)
class GridSpec:
    T: float
    N: int

    def __post_init__(self):
        if not self.T > 0:
            raise DomainError(f"horizon must be positive, got {self.T}")
        if self.N < 2:
            raise DomainError(f"need at least 2 steps, got {self.N}")

    @property
    def dt(self) -> float:
        return self.T / self.N

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.N + 1) * self.dt


def check_hurst(H: float, low: float = 0.5, high: float = 1.0):
    """Require low <= H < high."""
    if not low <= H < high:
        raise DomainError(f"Hurst index must lie in [{low}, {high}), got {H}")


def phi_gram(grid: GridSpec, H: float) -> np.ndarray:
    """G[j, k] = <1_[t_j, t_j+1), 1_[t_k, t_k+1)>_phi."""
    check_hurst(H)
    if H == 0.5:
        return np.diag(np.full(grid.N, grid.dt))
    t = grid.nodes
    left, right = t[:-1], t[1:]
    p = 2.0 * H

    def pw(x):
        return np.abs(x) ** p

    return 0.5 * (pw(right[:, None] - left[None, :]) + pw(left[:, None] - right[None, :])
                  - pw(left[:, None] - left[None, :]) - pw(right[:, None] - right[None, :]))


def toeplitz_row(grid: GridSpec, H: float) -> np.ndarray:
    """First row of phi_gram: g(k) = dt^{2H}/2 (|k+1|^{2H} + |k-1|^{2H} - 2|k|^{2H})."""
    check_hurst(H)
    k = np.arange(grid.N, dtype=float)
    p = 2.0 * H
    return 0.5 * grid.dt ** p * (np.abs(k + 1) ** p + np.abs(k - 1) ** p - 2 * np.abs(k) ** p)


@lru_cache(maxsize=8)
def increment_factor(grid: GridSpec, H: float) -> np.ndarray:
    """Lower Cholesky factor L of phi_gram; increments are L xi for standard complex xi."""
    if H == 0.5:
        check_hurst(H)
        return np.diag(np.full(grid.N, np.sqrt(grid.dt)))
    gram = phi_gram(grid, H)
    if grid.N > LARGE_GRAM:
        logger.warning("dense Cholesky of a %d x %d Gram matrix", grid.N, grid.N)
    try:
        factor = linalg.cholesky(gram, lower=True)
    except linalg.LinAlgError:
        smallest = float(np.linalg.eigvalsh(gram)[0])
        raise ConditioningError(
            f"Gram matrix for H={H}, N={grid.N} is not positive definite "
            f"(smallest eigenvalue {smallest:.3e})")
    logger.debug("increment_factor: N=%d H=%.3f", grid.N, H)
    factor.setflags(write=False)
    return factor


def gram_embed(grid: GridSpec, H: float) -> np.ndarray:
    """E = L^T, so that <f, g>_phi = <E f, E g> for step functions f, g on the grid."""
    return increment_factor(grid, H).T
