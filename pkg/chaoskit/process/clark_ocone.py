"""Discrete Clark-Ocone representation of polynomial Brownian functionals.

A functional is a WickPoly in the standardized increments xi_k = dZ_k / sqrt(dt)
of complex Brownian motion on a grid. Inside cell k the conditional
expectation G_k = E[F | cells <= k] is a polynomial in xi_k whose J-basis
coefficients give the exact stochastic integral over that cell, because
J_{a,b}(W_s, s) are martingales with dJ_{a,b} = a J_{a-1,b} dW + b J_{a,b-1} dWbar.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from ..errors import DomainError, ShapeError
from ..hermite import monomial_to_J, poly_J
from ..polyfun import WickPoly, expect_gaussian, expect_partial, inverse_int
from ..utils import Seed, seeded_chunks
from .grid import GridSpec

logger = logging.getLogger(__name__)

JCoeffs = Dict[Tuple[int, int], WickPoly]


@dataclass
class ClarkOconeReport:
    """Outcome of one decomposition.

    residual: max |F - EF - sum_k M_k| over the sampled paths (zero for any polynomial F)
    residual_poly_zero: the residual polynomial vanishes identically
    consistent: the holomorphic and antiholomorphic integrands give the same cell integrals
    ito_residual: RMS of F - EF minus the Ito sums with integrands frozen at t_k
    integrands: E[d F / d xi_k | cells < k], in standardized units
    """
    residual: float
    residual_poly_zero: bool
    consistent: bool
    max_inconsistency: float
    ito_residual: float
    integrands: List[WickPoly] = field(default_factory=list, repr=False)


def terminal_square(grid: GridSpec) -> WickPoly:
    """|Z_T|^2 = dt |sum_k xi_k|^2."""
    total = WickPoly.zero(grid.N)
    for k in range(grid.N):
        total = total + WickPoly.zeta(grid.N, k)
    return (total * total.conj()).scale(grid.dt)


def increment_poly(grid: GridSpec, k: int) -> WickPoly:
    """dZ_k = sqrt(dt) xi_k."""
    return WickPoly.zeta(grid.N, k).scale(math.sqrt(grid.dt))


def _j_basis(p: WickPoly, k: int) -> JCoeffs:
    """Write p as sum_{a,b} p_{a,b} J_{a,b}(xi_k, 1) with p_{a,b} free of xi_k."""
    out: Dict[Tuple[int, int], dict] = {}
    for (a, b), c in p.terms.items():
        rest = (a[:k] + (0,) + a[k + 1:], b[:k] + (0,) + b[k + 1:])
        for level, (coef, _) in monomial_to_J(a[k], b[k]).items():
            bucket = out.setdefault(level, {})
            bucket[rest] = bucket[rest] + c * coef if rest in bucket else c * coef
    return {level: WickPoly._raw(p.d, terms) for level, terms in out.items()}


def _j_poly(d: int, k: int, a: int, b: int) -> WickPoly:
    """J_{a,b}(xi_k, 1) as a WickPoly."""
    terms = {}
    for pa, pb, _, c in poly_J(a, b, cap=None).terms:
        ea = [0] * d
        eb = [0] * d
        ea[k], eb[k] = pa, pb
        terms[(tuple(ea), tuple(eb))] = c
    return WickPoly(d, terms)


def cell_integral(p: WickPoly, k: int) -> Tuple[WickPoly, float]:
    """Stochastic integral of E[D F | F_t] over cell k, and the holo/anti mismatch.

    Returns (M_k, max coefficient disagreement between the two routes).
    """
    tail = range(k + 1, p.d)
    holo = {(a + 1, b): e.scale(inverse_int(a + 1))
            for (a, b), e in _j_basis(expect_partial(p.d_z(k), tail), k).items()}
    anti = {(a, b + 1): e.scale(inverse_int(b + 1))
            for (a, b), e in _j_basis(expect_partial(p.d_zbar(k), tail), k).items()}

    zero = WickPoly.zero(p.d)
    mismatch = 0.0
    total = WickPoly.zero(p.d)
    for a, b in set(holo) | set(anti):
        # Levels with a, b >= 1 are reached from both sides.
        if a and b:
            mismatch = max(mismatch, holo.get((a, b), zero).max_abs_diff(anti.get((a, b), zero)))
        c = holo.get((a, b), zero) if a else anti[(a, b)]
        total = total + c * _j_poly(p.d, k, a, b)
    return total, mismatch


def _path_stats(p: WickPoly, seed: Seed, samples: int) -> Tuple[float, float]:
    """(max |p|, RMS of p) over sampled standardized paths."""
    if p.is_zero():
        return 0.0, 0.0
    peak = 0.0
    sq = 0.0
    for block in seeded_chunks(seed, samples, p.d):
        vals = np.abs(p.eval_at(block))
        peak = max(peak, float(vals.max()))
        sq += float(np.sum(vals ** 2))
    return peak, math.sqrt(sq / samples)


def clark_ocone_decompose(P: WickPoly, grid: GridSpec, samples: int = 1000, seed: Seed = 0,
                          hurst: float = 0.5) -> ClarkOconeReport:
    """Decompose F = EF + sum_k M_k exactly and compare with the frozen Ito sums."""
    if hurst != 0.5:
        raise DomainError("Clark-Ocone decomposition is available for H = 1/2 only")
    if P.d != grid.N:
        raise ShapeError(f"functional has {P.d} variables, grid has {grid.N} increments")
    if samples < 1:
        raise DomainError("need at least one sample path")

    mean = expect_gaussian(P)
    residual = P - WickPoly.const(P.d, mean)
    ito = residual
    worst = 0.0
    integrands = []
    for k in range(grid.N):
        m_k, mismatch = cell_integral(P, k)
        worst = max(worst, mismatch)
        residual = residual - m_k

        past = range(k, P.d)
        frozen = expect_partial(P.d_z(k), past)
        frozen_bar = expect_partial(P.d_zbar(k), past)
        integrands.append(frozen)
        ito = ito - frozen * WickPoly.zeta(P.d, k) - frozen_bar * WickPoly.zeta_bar(P.d, k)

    peak, _ = _path_stats(residual, seed, samples)
    _, ito_rms = _path_stats(ito, seed, samples)
    logger.debug("clark-ocone: N=%d residual=%g inconsistency=%g ito_rms=%g",
                 grid.N, peak, worst, ito_rms)
    return ClarkOconeReport(
        residual=peak,
        residual_poly_zero=residual.is_zero(),
        consistent=worst == 0.0,
        max_inconsistency=worst,
        ito_residual=ito_rms,
        integrands=integrands,
    )


def clark_ocone_residual(P: WickPoly, grid: GridSpec, samples: int = 1000, seed: Seed = 0,
                         hurst: float = 0.5) -> float:
    """max |F - EF - sum_k integral over cell k of E[D F | F_t] dZ + E[Dbar F | F_t] dZbar|."""
    return clark_ocone_decompose(P, grid, samples, seed, hurst).residual
