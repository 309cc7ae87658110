"""Conversions between real Hermite products H_k(x)H_{l-k}(y) and complex J_{m,l-m}(x+iy, 2).

With z = x + iy and rho = 2:

    J_{m,l-m}(z) = sum_k i^{l-k} sum_{r+s=k} C(m,r) C(l-m,s) (-1)^{l-m-s} H_k(x) H_{l-k}(y)
    H_k(x) H_{l-k}(y) = i^{l-k} / 2^l sum_m sum_{r+s=m} C(k,r) C(l-k,s) (-1)^s J_{m,l-m}(z)

Directional Hermite polynomials H_n(x cos t + y sin t) span the same space;
ThetaMatrix holds the change of basis for a set of n+1 directions.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, Sequence, Union

import numpy as np

from ..errors import ConditioningError, DomainError
from ..utils import binom

logger = logging.getLogger(__name__)

THETA_COND_LIMIT = 1e12
THETA_COND_WARN = 1e8


@dataclass(frozen=True, eq=False)
class ThetaMatrix:
    """M_{i,j} = C(n,j) (sin t_i)^{n-j} (cos t_i)^j for t_0 > t_1 > ... > t_n in (0, pi)."""
    angles: tuple
    matrix: np.ndarray
    inverse: np.ndarray
    condition: float

    @property
    def n(self) -> int:
        return len(self.angles) - 1

    @classmethod
    def build(cls, thetas: Sequence[float], cond_limit: float = THETA_COND_LIMIT) -> 'ThetaMatrix':
        angles = tuple(float(t) for t in thetas)
        if not angles:
            raise DomainError("need at least one angle")
        for t in angles:
            if not 0.0 < t < math.pi:
                raise DomainError(f"angle {t} outside (0, pi)")
        for a, b in zip(angles, angles[1:]):
            if not a > b:
                raise DomainError("angles must be strictly decreasing")

        n = len(angles) - 1
        mat = np.empty((n + 1, n + 1))
        for i, t in enumerate(angles):
            s, c = math.sin(t), math.cos(t)
            for j in range(n + 1):
                mat[i, j] = binom(n, j) * s ** (n - j) * c ** j
        cond = float(np.linalg.cond(mat))
        if not np.isfinite(cond) or cond > cond_limit:
            raise ConditioningError(f"direction matrix is near-singular (condition number {cond:.3e})")
        if cond > THETA_COND_WARN:
            logger.warning("direction matrix poorly conditioned: %.3e", cond)
        inv = np.linalg.inv(mat)
        mat.setflags(write=False)
        inv.setflags(write=False)
        return cls(angles, mat, inv, cond)


@dataclass(frozen=True, eq=False)
class ConversionCoeffs:
    """Coefficient matrix of one conversion direction.

    real_to_complex: row i holds d_k for direction angle i, so that
        H_n(f x + g y) = sum_k d_k J_{k,n-k}(z, 2).
    complex_to_real: row k holds c_i so that
        J_{k,n-k}(z, 2) = sum_i c_i H_n(f_i x + g_i y).
    """
    n: int
    direction: str
    matrix: np.ndarray


def _d_coeffs(n: int, theta: float) -> np.ndarray:
    c = math.cos(theta)
    si = 1j * math.sin(theta)
    out = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        acc = 0j
        for r in range(k + 1):
            s = k - r
            inner = 0j
            for l in range(n + 1):
                w = binom(n, l) * binom(l, r) * binom(n - l, s)
                if w:
                    inner += w * c ** l * si ** (n - l)
            acc += (-1) ** s * inner
        out[k] = acc / 2 ** n
    return out


def directional_to_complex(n: int, theta: Union[float, Sequence[float]] = 0.0) -> ConversionCoeffs:
    """Coefficients d_k with H_n(X(f)+Y(g)) = sum_k d_k J_{k,n-k}(Z(h)).

    Here |f|^2 + |g|^2 = 1 and h = sqrt(2) e^{i theta}(f - ig). With a
    scalar theta the matrix has one row; a sequence gives one row per angle.
    """
    if n < 0:
        raise DomainError("degree must be non-negative")
    thetas = [theta] if np.isscalar(theta) else list(theta)
    rows = np.stack([_d_coeffs(n, float(t)) for t in thetas])
    return ConversionCoeffs(n, 'real_to_complex', rows)


def complex_from_real(l: int, m: int) -> Dict[int, complex]:
    """Coefficients of H_k(x)H_{l-k}(y) in J_{m,l-m}(x+iy, 2), keyed by k."""
    if not 0 <= m <= l:
        raise DomainError(f"need 0 <= m <= l, got m={m}, l={l}")
    out = {}
    for k in range(l + 1):
        acc = 0
        for r in range(k + 1):
            s = k - r
            acc += binom(m, r) * binom(l - m, s) * (-1) ** (l - m - s)
        out[k] = (1j ** (l - k)) * acc
    return out


def real_from_complex(k: int, l: int) -> Dict[int, complex]:
    """Coefficients of J_{m,l-m}(x+iy, 2) in H_k(x)H_{l-k}(y), keyed by m."""
    if not 0 <= k <= l:
        raise DomainError(f"need 0 <= k <= l, got k={k}, l={l}")
    scale = (1j ** (l - k)) / 2 ** l
    out = {}
    for m in range(l + 1):
        acc = 0
        for r in range(m + 1):
            s = m - r
            acc += binom(k, r) * binom(l - k, s) * (-1) ** s
        out[m] = scale * acc
    return out


def complex_to_directional(n: int, thetas: Sequence[float]) -> ConversionCoeffs:
    """Coefficients c_i with J_{k,n-k}(Z(h)) = sum_i c_i H_n(X(f_i) + Y(g_i)).

    Here f_i + i g_i = e^{i theta_i} conj(h) / sqrt(2) and |h|^2 = 2. Row k
    of the result gives the expansion of J_{k,n-k}.
    """
    tm = ThetaMatrix.build(thetas)
    if tm.n != n:
        raise DomainError(f"need {n + 1} angles for degree {n}, got {len(thetas)}")
    rows = np.zeros((n + 1, n + 1), dtype=complex)
    for k in range(n + 1):
        a = complex_from_real(n, k)
        for i in range(n + 1):
            rows[k, i] = sum(tm.inverse[j, i] * a[j] for j in range(n + 1))
    return ConversionCoeffs(n, 'complex_to_real', rows)


def hermite_pair_rep(n: int, l: int, thetas: Sequence[float]) -> np.ndarray:
    """Row l of M^{-1}: H_l(x)H_{n-l}(y) = sum_k row[k] H_n(x cos t_k + y sin t_k)."""
    if not 0 <= l <= n:
        raise DomainError(f"need 0 <= l <= n, got l={l}, n={n}")
    tm = ThetaMatrix.build(thetas)
    if tm.n != n:
        raise DomainError(f"need {n + 1} angles for degree {n}")
    return np.array(tm.inverse[l])


def rotated_argument(f: float, g: float, theta: float, x, y):
    """Z(h) for h = sqrt(2) e^{i theta}(f - ig), realized as e^{i theta}(f - ig)(x + iy)."""
    return cmath.exp(1j * theta) * complex(f, -g) * (x + 1j * y)


def default_thetas(n: int) -> np.ndarray:
    """Evenly spread decreasing directions in (0, pi)."""
    return np.pi * (n + 1 - np.arange(n + 1)) / (n + 2)
