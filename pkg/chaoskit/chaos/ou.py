"""Ornstein-Uhlenbeck operators and semigroup on chaos expansions.

T_t with parameter theta scales level (m, n) by
exp(-[(m+n) cos(theta) + i (m-n) sin(theta)] t).
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import DomainError
from ..hermite import DEFAULT_DEGREE_CAP
from ..polyfun import Exact, WickPoly, expect_product, real_fraction
from ..tensor import Kernel
from ..utils import MIN_MC_SAMPLES, check_degree_cap, mc_reduce
from .expansion import ChaosExpansion
from .integral import kernel_to_poly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OUParams:
    theta: float
    t: float

    def __post_init__(self):
        if not -math.pi / 2 < self.theta < math.pi / 2:
            raise DomainError(f"theta must lie in (-pi/2, pi/2), got {self.theta}")
        if self.t < 0:
            raise DomainError(f"time must be non-negative, got {self.t}")

    @property
    def r(self) -> complex:
        return cmath.exp(1j * self.theta)

    def eigenvalue(self, m: int, n: int) -> complex:
        th, t = self.theta, self.t
        return cmath.exp(-((m + n) * math.cos(th) + 1j * (m - n) * math.sin(th)) * t)

    def compose(self, other: 'OUParams') -> 'OUParams':
        """T_s T_t = T_{s+t} for a common theta."""
        if self.theta != other.theta:
            raise DomainError("semigroup composition needs equal theta")
        return OUParams(self.theta, self.t + other.t)


def ou_L(F: ChaosExpansion) -> ChaosExpansion:
    return F.map_levels(lambda m, n: m)


def ou_Lbar(F: ChaosExpansion) -> ChaosExpansion:
    return F.map_levels(lambda m, n: n)


def ou_semigroup(F: ChaosExpansion, params: OUParams) -> ChaosExpansion:
    return F.map_levels(params.eigenvalue)


def mehler_estimate(p: WickPoly, params: OUParams, zeta, samples: int, seed: int,
                    workers: int = 1) -> Tuple[complex, float]:
    """Monte Carlo of E'[P(e^{-rt} zeta + sqrt(1 - e^{-2t cos theta}) zeta')] at fixed zeta.

    Returns:
        (estimate, standard error)
    """
    if samples < MIN_MC_SAMPLES:
        raise DomainError(f"need at least {MIN_MC_SAMPLES} samples, got {samples}")
    if p.degree() == 0:
        return complex(p.eval_at(np.zeros(p.d))), 0.0
    zeta = np.asarray(zeta, dtype=complex)
    shift = cmath.exp(-params.r * params.t) * zeta
    spread = math.sqrt(max(0.0, 1.0 - math.exp(-2.0 * params.t * math.cos(params.theta))))
    return mc_reduce(lambda block: p.eval_at(shift + spread * block), seed, samples, p.d, workers)


def _check_moment_order(r: int):
    if r < 2 or r % 2:
        raise DomainError(f"moment order must be an even integer >= 2, got {r}")


def abs_moment_exact(f: Kernel, r: int, cap: Optional[int] = DEFAULT_DEGREE_CAP) -> Exact:
    """E|I(f)|^r in exact arithmetic, r even."""
    _check_moment_order(r)
    check_degree_cap(r * f.order, cap)
    p = kernel_to_poly(f)
    q = p * p.conj()
    half = r // 2
    return expect_product(q ** (half // 2), q ** (half - half // 2))


def hypercontractivity_margin(f: Kernel, r: int, cap: Optional[int] = DEFAULT_DEGREE_CAP) -> float:
    """(r-1)^{(p+q)/2} ||I(f)||_2 - ||I(f)||_r, non-negative for every kernel."""
    _check_moment_order(r)
    second = float(real_fraction(abs_moment_exact(f, 2, cap)))
    rth = float(real_fraction(abs_moment_exact(f, r, cap)))
    margin = (r - 1) ** (f.order / 2) * math.sqrt(second) - rth ** (1.0 / r)
    logger.debug("hypercontractivity_margin: type %s r=%d margin=%.6g", f.rank, r, margin)
    return margin
