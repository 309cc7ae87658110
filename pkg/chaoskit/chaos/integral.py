"""Multiple Wiener-Ito integrals I_{m,n}(f) over C^d.

Coordinates zeta_k = Z(e_k) are standard complex Gaussians with
E|zeta_k|^2 = 1, so the basis functional of a kernel entry f[p; q] is
prod_k J_{m_k(p), n_k(q)}(zeta_k, 1) where m_k, n_k count how often k
occurs among the holomorphic and antiholomorphic indices.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple, Union

import numpy as np

from ..errors import ShapeError
from ..hermite import eval_J, poly_J
from ..polyfun import ZERO, WickPoly, exact
from ..tensor import Kernel, trace_k
from ..utils import binom, standard_complex
from .expansion import ChaosExpansion


@dataclass(frozen=True, eq=False)
class IsonormalSample:
    """One draw zeta in C^d of i.i.d. standard complex Gaussians."""
    zeta: np.ndarray

    def __post_init__(self):
        z = np.array(self.zeta, dtype=complex)
        if z.ndim != 1:
            raise ShapeError(f"sample must be a vector, got shape {z.shape}")
        z.setflags(write=False)
        object.__setattr__(self, 'zeta', z)

    @property
    def d(self) -> int:
        return len(self.zeta)

    @classmethod
    def draw(cls, rng: np.random.Generator, d: int) -> 'IsonormalSample':
        return cls(standard_complex(rng, d))


def sample_isonormal(rng: np.random.Generator, d: int, size: int) -> np.ndarray:
    """(size, d) block of standard complex Gaussians."""
    return standard_complex(rng, (size, d))


def _counts(idx: Tuple[int, ...], d: int) -> Tuple[int, ...]:
    out = [0] * d
    for k in idx:
        out[k] += 1
    return tuple(out)


def eval_integral(f: Kernel, sample: Union[IsonormalSample, np.ndarray]) -> complex:
    """I_{m,n}(f) at one point, summed entry by entry over the J basis."""
    f.require_symmetric()
    zeta = sample.zeta if isinstance(sample, IsonormalSample) else np.asarray(sample, dtype=complex)
    if zeta.shape != (f.d,):
        raise ShapeError(f"sample has shape {zeta.shape}, kernel needs ({f.d},)")
    if f.order == 0:
        return f.scalar_value()

    basis: Dict[Tuple[int, int, int], complex] = {}

    def factor(k, a, b):
        key = (k, a, b)
        if key not in basis:
            basis[key] = eval_J(a, b, zeta[k], 1.0, cap=None)
        return basis[key]

    total = 0j
    for idx in zip(*np.nonzero(f.coeffs)):
        idx = tuple(int(i) for i in idx)
        hc = _counts(idx[:f.m], f.d)
        ac = _counts(idx[f.m:], f.d)
        val = f.coeffs[idx]
        for k in range(f.d):
            if hc[k] or ac[k]:
                val = val * factor(k, hc[k], ac[k])
        total += val
    return complex(total)


def stratonovich_eval(g: Kernel, zeta: np.ndarray) -> np.ndarray:
    """sum g[p; q] zeta_p zetabar_q over a (B, d) block of points."""
    zeta = np.atleast_2d(np.asarray(zeta, dtype=complex))
    if zeta.shape[1] != g.d:
        raise ShapeError(f"points have dimension {zeta.shape[1]}, kernel needs {g.d}")
    batch = zeta.shape[0]
    if g.order == 0:
        return np.full(batch, g.scalar_value())
    zc = np.conj(zeta)
    vectors = [zc] * g.n + [zeta] * g.m
    out = np.tensordot(vectors[0], g.coeffs, axes=([1], [g.order - 1]))
    for vec in vectors[1:]:
        out = np.einsum('b...k,bk->b...', out, vec)
    return out


def eval_integral_batch(f: Kernel, zeta: np.ndarray) -> np.ndarray:
    """I_{m,n}(f) over a (B, d) block via the trace expansion

    I_{m,n}(f) = sum_k (-1)^k k! C(m,k) C(n,k) S(Tr^k f).
    """
    f.require_symmetric()
    zeta = np.atleast_2d(np.asarray(zeta, dtype=complex))
    out = np.zeros(zeta.shape[0], dtype=complex)
    for k in range(min(f.m, f.n) + 1):
        c = (-1) ** k * math.factorial(k) * binom(f.m, k) * binom(f.n, k)
        out += c * stratonovich_eval(trace_k(f, k), zeta)
    return out


def eval_expansion(F: ChaosExpansion, zeta: np.ndarray) -> np.ndarray:
    """sum_{(m,n)} I_{m,n}(f_{m,n}) over a (B, d) block."""
    zeta = np.atleast_2d(np.asarray(zeta, dtype=complex))
    out = np.zeros(zeta.shape[0], dtype=complex)
    for f in F.levels.values():
        out += eval_integral_batch(f, zeta)
    return out


@lru_cache(maxsize=None)
def _basis_terms(hc: Tuple[int, ...], ac: Tuple[int, ...]) -> Tuple:
    """prod_k J_{hc_k, ac_k}(zeta_k, 1) as ((a, b), int coefficient) pairs."""
    terms = {((0,) * len(hc), (0,) * len(ac)): 1}
    for k, (m, n) in enumerate(zip(hc, ac)):
        if not (m or n):
            continue
        factor = [(a, b, c) for a, b, _, c in poly_J(m, n, cap=None).poly.terms]
        nxt: Dict = {}
        for (a_vec, b_vec), c0 in terms.items():
            for a, b, c in factor:
                na = a_vec[:k] + (a_vec[k] + a,) + a_vec[k + 1:]
                nb = b_vec[:k] + (b_vec[k] + b,) + b_vec[k + 1:]
                nxt[(na, nb)] = nxt.get((na, nb), 0) + c0 * c
        terms = {key: c for key, c in nxt.items() if c}
    return tuple(terms.items())


def kernel_to_poly(f: Kernel) -> WickPoly:
    """The polynomial in (zeta, zetabar) that I_{m,n}(f) evaluates.

    Float coefficients are lifted exactly, so the result is the exact image
    of the float kernel.
    """
    d = f.d
    if f.order == 0:
        return WickPoly.const(d, exact(f.scalar_value()))
    grouped: Dict[Tuple, object] = {}
    for idx in zip(*np.nonzero(f.coeffs)):
        idx = tuple(int(i) for i in idx)
        key = (_counts(idx[:f.m], d), _counts(idx[f.m:], d))
        grouped[key] = grouped.get(key, ZERO) + exact(complex(f.coeffs[idx]))
    out: Dict = {}
    for (hc, ac), c in grouped.items():
        for mono, coef in _basis_terms(hc, ac):
            out[mono] = out.get(mono, ZERO) + c * coef
    return WickPoly._raw(d, out)


def expansion_to_poly(F: ChaosExpansion) -> WickPoly:
    total = WickPoly.zero(F.d)
    for f in F.levels.values():
        total = total + kernel_to_poly(f)
    return total
