"""Product formula, Wick products and the independence criterion."""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ShapeError
from ..polyfun import WickPoly
from ..tensor import (Kernel, contract, contract_sym, reversed_conjugate,
                      symmetrize, tensor_power, tensor_product)
from ..utils import DEFAULT_INDEPENDENCE_TOL, binom, check_degree_cap
from .expansion import ChaosExpansion
from .integral import kernel_to_poly

logger = logging.getLogger(__name__)


def product_coefficient(a: int, b: int, c: int, dd: int, i: int, j: int) -> int:
    """C(a,i) C(dd,i) C(b,j) C(c,j) i! j!"""
    return (binom(a, i) * binom(dd, i) * binom(b, j) * binom(c, j)
            * math.factorial(i) * math.factorial(j))


def product_pair(f: Kernel, g: Kernel) -> ChaosExpansion:
    """Chaos expansion of I_{a,b}(f) I_{c,dd}(g)."""
    if f.d != g.d:
        raise ShapeError(f"dimension mismatch: {f.d} vs {g.d}")
    f.require_symmetric()
    g.require_symmetric()
    a, b, c, dd = f.m, f.n, g.m, g.n
    terms = []
    for i in range(min(a, dd) + 1):
        for j in range(min(b, c) + 1):
            terms.append(contract_sym(f, g, i, j) * product_coefficient(a, b, c, dd, i, j))
    return ChaosExpansion.from_kernels(terms, f.d)


def expansion_product(F: ChaosExpansion, G: ChaosExpansion) -> ChaosExpansion:
    if F.d != G.d:
        raise ShapeError(f"dimension mismatch: {F.d} vs {G.d}")
    total = ChaosExpansion.zero(F.d)
    for f in F.levels.values():
        for g in G.levels.values():
            total = total + product_pair(f, g)
    return total


def wick_product(f: Kernel, g: Kernel) -> Kernel:
    """I(f) <> I(g) = I_{m+p,n+q}(symmetrize(f (x) g))."""
    if f.d != g.d:
        raise ShapeError(f"dimension mismatch: {f.d} vs {g.d}")
    f.require_symmetric()
    g.require_symmetric()
    return symmetrize(tensor_product(f, g))


def wick_expansion(F: ChaosExpansion, G: ChaosExpansion) -> ChaosExpansion:
    """Bilinear extension of the Wick product to expansions."""
    if F.d != G.d:
        raise ShapeError(f"dimension mismatch: {F.d} vs {G.d}")
    return ChaosExpansion.from_kernels(
        (wick_product(f, g) for f in F.levels.values() for g in G.levels.values()), F.d)


def wick_ratio(F: ChaosExpansion, G: ChaosExpansion) -> float:
    """||F <> G||_2 / (||F||_2 ||G||_2); NaN when either factor is zero."""
    denom = math.sqrt(F.norm2() * G.norm2())
    if denom == 0.0:
        return float('nan')
    return math.sqrt(wick_expansion(F, G).norm2()) / denom


@dataclass
class WickCheckReport:
    p: int
    q: int
    max_abs_diff: float
    passed: bool
    kernel_poly: Optional[WickPoly] = field(default=None, repr=False)
    formula_poly: Optional[WickPoly] = field(default=None, repr=False)


def wick_monomial_poly(p: int, q: int, vec: Sequence[complex]) -> WickPoly:
    """sum_k (-1)^k k! C(p,k) C(q,k) ||f||^{2k} Z(f)^{p-k} conj(Z(f))^{q-k}"""
    v = np.asarray(vec, dtype=complex)
    z = WickPoly.linear(list(v))
    zb = z.conj()
    norm2 = float(np.vdot(v, v).real)
    total = WickPoly.zero(len(v))
    for k in range(min(p, q) + 1):
        c = (-1) ** k * math.factorial(k) * binom(p, k) * binom(q, k)
        total = total + (z ** (p - k)) * (zb ** (q - k)) * (c * norm2 ** k)
    return total


def wick_monomial_check(p: int, q: int, vec: Sequence[complex],
                        cap: Optional[int] = None, tol: float = 1e-10) -> WickCheckReport:
    """Compare :Z(f)^p conj(Z(f))^q: built from kernels with the alternating-sum formula."""
    check_degree_cap(p + q, cap)
    kernel = tensor_power(vec, p, q)
    lhs = kernel_to_poly(kernel)
    rhs = wick_monomial_poly(p, q, vec)
    diff = lhs.max_abs_diff(rhs)
    logger.debug("wick_monomial_check(%d, %d): diff %.3g", p, q, diff)
    return WickCheckReport(p, q, diff, diff <= tol, lhs, rhs)


@dataclass
class IndependenceReport:
    independent: bool
    norms: Dict[str, float]
    skipped: List[str]


def independence_test(f: Kernel, g: Kernel, tol: float = DEFAULT_INDEPENDENCE_TOL) -> IndependenceReport:
    """Contraction criterion for independence of I(f) and I(g).

    Contractions whose slot counts do not exist are skipped and listed.
    """
    if f.order < 1 or g.order < 1:
        raise ShapeError("independence test needs kernels of positive order")
    if f.d != g.d:
        raise ShapeError(f"dimension mismatch: {f.d} vs {g.d}")
    h = reversed_conjugate(g)
    candidates: Tuple = (
        ('f(1,0)g', g, 1, 0),
        ('f(0,1)g', g, 0, 1),
        ('f(1,0)h', h, 1, 0),
        ('f(0,1)h', h, 0, 1),
    )
    norms: Dict[str, float] = {}
    skipped: List[str] = []
    for name, other, i, j in candidates:
        if i > min(f.m, other.n) or j > min(f.n, other.m):
            skipped.append(name)
            continue
        norms[name] = contract(f, other, i, j).norm()
    independent = all(v <= tol for v in norms.values())
    return IndependenceReport(independent, norms, skipped)
