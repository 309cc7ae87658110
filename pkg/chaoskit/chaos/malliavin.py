"""Malliavin derivatives D, Dbar and the divergences delta, deltabar.

A d-indexed family u = (u_0, ..., u_{d-1}) stands for the H-valued
variable sum_k u_k e_k.
"""

from typing import Dict, List, Sequence

import numpy as np

from ..errors import ShapeError
from ..tensor import Kernel, symmetrize
from .expansion import ChaosExpansion, Level

Family = List[ChaosExpansion]


def malliavin_D(F: ChaosExpansion) -> Family:
    """(D F)_k: level (m, n) goes to (m-1, n) with kernel m f[k, .; .]."""
    out = []
    for k in range(F.d):
        levels = {}
        for (m, n), f in F.levels.items():
            if m:
                levels[(m - 1, n)] = Kernel(F.d, m - 1, n, m * f.coeffs[k])
        out.append(ChaosExpansion(F.d, levels))
    return out


def malliavin_Dbar(F: ChaosExpansion) -> Family:
    """(Dbar F)_k: level (m, n) goes to (m, n-1) with kernel n f[.; k, .]."""
    out = []
    for k in range(F.d):
        levels = {}
        for (m, n), f in F.levels.items():
            if n:
                levels[(m, n - 1)] = Kernel(F.d, m, n - 1, n * np.take(f.coeffs, k, axis=m))
        out.append(ChaosExpansion(F.d, levels))
    return out


def _check_family(u: Sequence[ChaosExpansion]) -> int:
    if not u:
        raise ShapeError("empty family")
    d = u[0].d
    if len(u) != d or any(x.d != d for x in u):
        raise ShapeError(f"family must have {d} components over C^{d}")
    return d


def _divergence(u: Sequence[ChaosExpansion], holomorphic: bool) -> ChaosExpansion:
    d = _check_family(u)
    acc: Dict[Level, np.ndarray] = {}
    for k, comp in enumerate(u):
        for (m, n), g in comp.levels.items():
            key = (m + 1, n) if holomorphic else (m, n + 1)
            if key not in acc:
                acc[key] = np.zeros((d,) * (m + n + 1), dtype=complex)
            # new slot sits first on its side
            if holomorphic:
                acc[key][k] += g.coeffs
            else:
                view = np.moveaxis(acc[key], m, 0)
                view[k] += g.coeffs
    return ChaosExpansion(d, {key: symmetrize(arr, *key) for key, arr in acc.items()})


def divergence(u: Sequence[ChaosExpansion]) -> ChaosExpansion:
    """delta u: level-(m, n) components g_k give I_{m+1,n}(symmetrize(sum_k e_k (x) g_k))."""
    return _divergence(u, True)


def divergence_bar(u: Sequence[ChaosExpansion]) -> ChaosExpansion:
    """deltabar u: the new slot is antiholomorphic, giving level (m, n+1)."""
    return _divergence(u, False)
