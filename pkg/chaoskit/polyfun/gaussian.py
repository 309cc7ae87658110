"""Closed-form and sampled expectations under i.i.d. standard complex Gaussians.

E[zeta_k^a zetabar_k^b] = delta_{ab} a!, independently across coordinates.
"""

import logging
import math
from typing import Dict, Iterable, Tuple

from ..errors import DomainError
from ..utils import MIN_MC_SAMPLES, mc_reduce
from .exact import ZERO, Exact
from .wickpoly import WickPoly

logger = logging.getLogger(__name__)


def _moment(a: Tuple[int, ...], b: Tuple[int, ...]) -> int:
    val = 1
    for x, y in zip(a, b):
        if x != y:
            return 0
        if x > 1:
            val *= math.factorial(x)
    return val


def expect_gaussian(p: WickPoly) -> Exact:
    """Exact E[P(zeta)]."""
    total = ZERO
    for (a, b), c in p.terms.items():
        m = _moment(a, b)
        if m:
            total = total + c * m
    return total


def expect_partial(p: WickPoly, over: Iterable[int]) -> WickPoly:
    """Integrate out the coordinates in ``over``; the rest stay symbolic.

    This is the conditional expectation given the remaining coordinates.
    """
    over = sorted(set(over))
    for k in over:
        if not 0 <= k < p.d:
            raise DomainError(f"variable index {k} out of range")
    out: Dict = {}
    for (a, b), c in p.terms.items():
        weight = 1
        for k in over:
            if a[k] != b[k]:
                weight = 0
                break
            weight *= math.factorial(a[k])
        if not weight:
            continue
        na = tuple(0 if k in over else x for k, x in enumerate(a))
        nb = tuple(0 if k in over else x for k, x in enumerate(b))
        key = (na, nb)
        val = c * weight
        out[key] = out[key] + val if key in out else val
    return WickPoly._raw(p.d, out)


def _charge_buckets(p: WickPoly):
    buckets: Dict[Tuple[int, ...], list] = {}
    for (a, b), c in p.terms.items():
        charge = tuple(y - x for x, y in zip(a, b))
        buckets.setdefault(charge, []).append((a, b, c))
    return buckets


def expect_product(p: WickPoly, q: WickPoly) -> Exact:
    """Exact E[P Q] without forming the product.

    A pair of terms contributes only when their zeta/zetabar charges cancel,
    so Q's terms are bucketed by charge b - a.
    """
    if p.d != q.d:
        raise DomainError(f"variable counts differ: {p.d} vs {q.d}")
    buckets = _charge_buckets(q)
    total = ZERO
    for (a1, b1), c1 in p.terms.items():
        charge = tuple(x - y for x, y in zip(a1, b1))
        for a2, b2, c2 in buckets.get(charge, ()):
            val = 1
            for x1, x2 in zip(a1, a2):
                s = x1 + x2
                if s > 1:
                    val *= math.factorial(s)
            total = total + c1 * c2 * val
    return total


def expect_abs2(p: WickPoly) -> Exact:
    """E|P|^2."""
    return expect_product(p, p.conj())


def mc_expectation(p: WickPoly, samples: int, seed: int,
                   workers: int = 1) -> Tuple[complex, float]:
    """Monte Carlo (mean, standard error) of P over standard complex Gaussian draws.

    The stream is split into fixed-size seeded chunks summed in chunk order,
    so the result is the same for any worker count.
    """
    if samples < MIN_MC_SAMPLES:
        raise DomainError(f"need at least {MIN_MC_SAMPLES} samples, got {samples}")
    return mc_reduce(p.eval_at, seed, samples, p.d, workers)