"""Complex fractional Brownian motion zeta = (B1 + i B2)/sqrt(2) on a grid."""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..utils import Seed, standard_complex
from .grid import GridSpec, check_hurst, increment_factor

logger = logging.getLogger(__name__)

HURST_MIN = 0.5
HURST_MAX = 0.75


@dataclass(frozen=True, eq=False)
class ComplexPath:
    """Grid values of a complex process.

    ``xi`` holds the standard complex coordinates the path was built from
    (increments = L xi), when known.
    """
    grid: GridSpec
    values: np.ndarray
    kind: str
    hurst: float
    xi: Optional[np.ndarray] = None

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.values)

    @property
    def times(self) -> np.ndarray:
        return self.grid.nodes


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def simulate_cfbm_paths(grid: GridSpec, H: float, seed: Seed, paths: int) -> np.ndarray:
    """(paths, N+1) array of complex fBm values, zeta_0 = 0, E|zeta_t|^2 = t^{2H}."""
    check_hurst(H, HURST_MIN, HURST_MAX)
    factor = increment_factor(grid, H)
    xi = standard_complex(_rng(seed), (paths, grid.N))
    increments = xi @ factor.T
    out = np.zeros((paths, grid.N + 1), dtype=complex)
    out[:, 1:] = np.cumsum(increments, axis=1)
    return out


def simulate_cfbm(grid: GridSpec, H: float, seed: Seed) -> ComplexPath:
    """One exact sample of complex fBm on the grid, keeping its coordinates."""
    check_hurst(H, HURST_MIN, HURST_MAX)
    factor = increment_factor(grid, H)
    xi = standard_complex(_rng(seed), grid.N)
    values = np.concatenate([[0j], np.cumsum(factor @ xi)])
    return ComplexPath(grid, values, 'fbm', H, xi)
