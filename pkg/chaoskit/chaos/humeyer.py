"""Hu-Meyer conversion between Stratonovich and Ito multiple integrals.

S_{p,q}(f) = sum_k k! C(p,k) C(q,k) I_{p-k,q-k}(Tr^k f)
I_{p,q}(f) = sum_k (-1)^k k! C(p,k) C(q,k) S_{p-k,q-k}(Tr^k f)
"""

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Mapping, Optional

import numpy as np

from ..errors import DomainError
from ..polyfun import ZERO, WickPoly, exact
from ..tensor import Kernel, trace_k
from ..utils import binom
from .expansion import ChaosExpansion, Level
from .integral import stratonovich_eval


def _trace_weight(p: int, q: int, k: int) -> int:
    return math.factorial(k) * binom(p, k) * binom(q, k)


@dataclass(frozen=True, eq=False)
class StratonovichExpansion:
    """sum over levels of S_{a,b}(g_{a,b})."""
    d: int
    terms: Mapping[Level, Kernel] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'terms', MappingProxyType(dict(self.terms)))

    def evaluate(self, zeta) -> np.ndarray:
        zeta = np.atleast_2d(np.asarray(zeta, dtype=complex))
        out = np.zeros(zeta.shape[0], dtype=complex)
        for g in self.terms.values():
            out += stratonovich_eval(g, zeta)
        return out

    def to_chaos(self) -> ChaosExpansion:
        total = ChaosExpansion.zero(self.d)
        for g in self.terms.values():
            total = total + hu_meyer_forward(g)
        return total


def hu_meyer_forward(f: Kernel) -> ChaosExpansion:
    """Chaos expansion of the Stratonovich integral S_{p,q}(f)."""
    f.require_symmetric()
    p, q = f.rank
    return ChaosExpansion(f.d, {
        (p - k, q - k): trace_k(f, k) * _trace_weight(p, q, k)
        for k in range(min(p, q) + 1)
    })


def hu_meyer_inverse(f: Kernel) -> StratonovichExpansion:
    """Stratonovich expansion of the Ito integral I_{p,q}(f)."""
    f.require_symmetric()
    p, q = f.rank
    return StratonovichExpansion(f.d, {
        (p - k, q - k): trace_k(f, k) * ((-1) ** k * _trace_weight(p, q, k))
        for k in range(min(p, q) + 1)
    })


def stratonovich_poly(f: Kernel, n: Optional[int] = None) -> WickPoly:
    """Partial sum S^n(f) = sum f[p; q] zeta_p zetabar_q over indices < n.

    n defaults to the full basis, where S^n equals S_{p,q}(f).
    """
    d = f.d
    n = d if n is None else n
    if not 0 <= n <= d:
        raise DomainError(f"partial basis size must lie in [0, {d}], got {n}")
    if f.order == 0:
        return WickPoly.const(d, exact(f.scalar_value()))
    out: Dict = {}
    block = f.coeffs[(slice(0, n),) * f.order]
    for idx in zip(*np.nonzero(block)):
        a, b = [0] * d, [0] * d
        for k in idx[:f.m]:
            a[k] += 1
        for k in idx[f.m:]:
            b[k] += 1
        key = (tuple(a), tuple(b))
        out[key] = out.get(key, ZERO) + exact(complex(block[idx]))
    return WickPoly._raw(d, out)
