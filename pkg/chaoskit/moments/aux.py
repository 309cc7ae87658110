"""Auxiliary contraction kernels of a single chaos F = I_{m,n}(f).

With h the reversed conjugate of f (so conj(F) = I_{n,m}(h)), l = m + n and
l' = 2 min(m, n):

    psi_r      level-(l-r, l-r) kernels of |F|^2, r = 0..l
    phi_r      level-(2m-r, 2n-r) kernels of F^2, r = 0..l'
    theta_r    i/m weighted psi, the levels of ||DF||^2 / m
    varsigma_r i/m weighted phi, the levels of <DF, D conj(F)> / m
    eta_r      i weighted psi, the levels of ||DF||^2
    xi_r       j weighted, from h (x)_{j,i} f, the levels of ||Dbar F||^2
    nu_r       i weighted phi, the levels of <DF, D conj(F)>
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Tuple

from ..errors import DomainError
from ..tensor import Kernel, contract_sym, reversed_conjugate
from ..utils import binom

Family = Dict[int, Kernel]


def _f_h_weight(m: int, n: int, i: int, j: int) -> int:
    return binom(m, i) ** 2 * binom(n, j) ** 2 * math.factorial(i) * math.factorial(j)


def _f_f_weight(m: int, n: int, i: int, j: int) -> int:
    return (binom(m, i) * binom(n, i) * binom(n, j) * binom(m, j)
            * math.factorial(i) * math.factorial(j))


@dataclass
class AuxKernels:
    m: int
    n: int
    theta: Family = field(default_factory=dict)
    psi: Family = field(default_factory=dict)
    varsigma: Family = field(default_factory=dict)
    phi: Family = field(default_factory=dict)
    eta: Family = field(default_factory=dict)
    xi: Family = field(default_factory=dict)
    nu: Family = field(default_factory=dict)

    @property
    def l(self) -> int:
        return self.m + self.n

    @property
    def lp(self) -> int:
        return 2 * min(self.m, self.n)

    def psi_level(self, r: int) -> Tuple[int, int]:
        return (self.l - r, self.l - r)

    def phi_level(self, r: int) -> Tuple[int, int]:
        return (2 * self.m - r, 2 * self.n - r)

    def phi_range(self) -> Iterable[int]:
        """r >= 1 with a non-scalar phi level."""
        top = self.lp - 1 if self.m == self.n else self.lp
        return range(1, top + 1)

    def psi_range(self) -> Iterable[int]:
        return range(1, self.l)


def _accumulate(pairs, make: Callable[[int, int], Kernel],
                weight: Callable[[int, int], float]) -> Family:
    out: Family = {}
    for i, j in pairs:
        w = weight(i, j)
        if not w:
            continue
        term = make(i, j) * w
        r = i + j
        out[r] = out[r] + term if r in out else term
    return out


def aux_kernels(f: Kernel) -> AuxKernels:
    m, n = f.rank
    if m + n < 1:
        raise DomainError("auxiliary kernels need m + n >= 1")
    f.require_symmetric()
    h = reversed_conjugate(f)
    k = min(m, n)
    fh_pairs = [(i, j) for i in range(m + 1) for j in range(n + 1)]
    ff_pairs = [(i, j) for i in range(k + 1) for j in range(k + 1)]

    fh_cache: Dict[Tuple[int, int], Kernel] = {}
    ff_cache: Dict[Tuple[int, int], Kernel] = {}

    def f_h(i, j):
        if (i, j) not in fh_cache:
            fh_cache[(i, j)] = contract_sym(f, h, i, j)
        return fh_cache[(i, j)]

    def f_f(i, j):
        if (i, j) not in ff_cache:
            ff_cache[(i, j)] = contract_sym(f, f, i, j)
        return ff_cache[(i, j)]

    def h_f(i, j):
        return contract_sym(h, f, j, i)

    out = AuxKernels(m, n)
    out.psi = _accumulate(fh_pairs, f_h, lambda i, j: _f_h_weight(m, n, i, j))
    out.eta = _accumulate(fh_pairs, f_h, lambda i, j: i * _f_h_weight(m, n, i, j))
    out.xi = _accumulate(fh_pairs, h_f, lambda i, j: j * _f_h_weight(m, n, i, j))
    out.phi = _accumulate(ff_pairs, f_f, lambda i, j: _f_f_weight(m, n, i, j))
    out.nu = _accumulate(ff_pairs, f_f, lambda i, j: i * _f_f_weight(m, n, i, j))
    if m:
        out.theta = _accumulate(fh_pairs, f_h, lambda i, j: i * _f_h_weight(m, n, i, j) / m)
        out.varsigma = _accumulate(ff_pairs, f_f, lambda i, j: i * _f_f_weight(m, n, i, j) / m)
    return out
