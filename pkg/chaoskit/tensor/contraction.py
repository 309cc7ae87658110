"""Contractions and traces of kernels.

For f of type (a, b) and g of type (c, dd), the (i, j) contraction pairs the
last i holomorphic slots of f with the last i antiholomorphic slots of g,
and the last j antiholomorphic slots of f with the last j holomorphic slots
of g:

    (f (x)_{i,j} g)[t_f, t_g ; s_f, s_g] = sum_{u, v} f[t_f, u ; s_f, v] g[t_g, v ; s_g, u]
"""

import numpy as np

from ..errors import ShapeError
from .kernel import Kernel, symmetrize


def _labels(start: int, count: int):
    return list(range(start, start + count))


def contract(f: Kernel, g: Kernel, i: int, j: int) -> Kernel:
    """f (x)_{i,j} g of type (a+c-i-j, b+dd-i-j); no symmetrization."""
    if f.d != g.d:
        raise ShapeError(f"dimension mismatch: {f.d} vs {g.d}")
    a, b, c, dd = f.m, f.n, g.m, g.n
    if not (0 <= i <= min(a, dd)) or not (0 <= j <= min(b, c)):
        raise ShapeError(
            f"contraction ({i},{j}) undefined for types ({a},{b}) and ({c},{dd})")

    pos = 0
    t_f = _labels(pos, a - i); pos += a - i
    u = _labels(pos, i); pos += i
    s_f = _labels(pos, b - j); pos += b - j
    v = _labels(pos, j); pos += j
    t_g = _labels(pos, c - j); pos += c - j
    s_g = _labels(pos, dd - i); pos += dd - i

    f_idx = t_f + u + s_f + v
    g_idx = t_g + v + s_g + u
    out_idx = t_f + t_g + s_f + s_g
    arr = np.einsum(f.coeffs, f_idx, g.coeffs, g_idx, out_idx)
    return Kernel(f.d, a + c - i - j, b + dd - i - j, arr)


def contract_sym(f: Kernel, g: Kernel, i: int, j: int) -> Kernel:
    """Symmetrized contraction f (x~)_{i,j} g."""
    return symmetrize(contract(f, g, i, j))


def tensor_product(f: Kernel, g: Kernel) -> Kernel:
    """f (x) g, i.e. the (0, 0) contraction."""
    return contract(f, g, 0, 0)


def trace_k(f: Kernel, k: int) -> Kernel:
    """(Tr^k f)[p';q'] = sum_u f[u, p'; u, q'] over the first k slots of each side."""
    if not 0 <= k <= min(f.m, f.n):
        raise ShapeError(f"trace order {k} out of range for type ({f.m},{f.n})")
    if k == 0:
        return f
    u = _labels(0, k)
    rest_h = _labels(k, f.m - k)
    rest_a = _labels(f.m, f.n - k)
    arr = np.einsum(f.coeffs, u + rest_h + u + rest_a, rest_h + rest_a)
    return Kernel(f.d, f.m - k, f.n - k, arr)
