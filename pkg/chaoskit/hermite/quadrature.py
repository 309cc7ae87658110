"""Gauss-Hermite product quadrature under the complex Gaussian measure.

d mu(z) = (1 / (pi rho)) exp(-|z|^2 / rho) dx dy, i.e. Re z and Im z are
independent N(0, rho/2).
"""

import math
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite_e import hermegauss

from .poly import eval_J

DEFAULT_NODES = 48


@lru_cache(maxsize=8)
def _grid(nodes: int):
    t, w = hermegauss(nodes)
    w = w / math.sqrt(2.0 * math.pi)
    return t, w


def gaussian_expect(fn, rho: float, nodes: int = DEFAULT_NODES) -> complex:
    """E_mu[fn(z)] for a vectorized fn of a complex array."""
    t, w = _grid(nodes)
    scale = math.sqrt(rho / 2.0)
    x = scale * t[:, None]
    y = scale * t[None, :]
    vals = fn(x + 1j * y)
    return complex(np.sum(w[:, None] * w[None, :] * vals))


def gaussian_inner(m: int, n: int, p: int, q: int, rho: float,
                   nodes: int = DEFAULT_NODES) -> complex:
    """<J_{m,n}, J_{p,q}>_{L^2(mu)}; exact for total degree below 2 * nodes."""
    def integrand(z):
        a = np.vectorize(lambda v: eval_J(m, n, v, rho, cap=None), otypes=[complex])(z)
        b = np.vectorize(lambda v: eval_J(p, q, v, rho, cap=None), otypes=[complex])(z)
        return a * np.conj(b)
    return gaussian_expect(integrand, rho, nodes)
