"""Fourth moments, the gap E|F|^4 - 2(E|F|^2)^2 - |E F^2|^2 and derivative variances.

The gap is computed four ways: directly by the polynomial oracle, and
from contraction kernels through the |F|^2 expansion (psi), the F^2
expansion (phi) and the derivative identity (theta/psi + varsigma/phi).
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Tuple

from ..chaos import abs_moment_exact, kernel_to_poly
from ..errors import DomainError
from ..polyfun import Exact, WickPoly, conj, expect_gaussian, expect_product, inverse_int, real_fraction
from ..tensor import Kernel, contract, contract_sym, inner, reversed_conjugate
from ..utils import binom
from .aux import AuxKernels, aux_kernels

logger = logging.getLogger(__name__)

GAP_ROUTES = ('direct', 'psi', 'phi', 'derivative')


def _real(value: Exact) -> float:
    return float(real_fraction(value))


def _factorial_sq(k: int) -> int:
    return math.factorial(k) ** 2


def ff_pairs(m: int, n: int) -> List[Tuple[int, int]]:
    """(i, j) with a non-trivial, non-scalar f (x)_{i,j} f."""
    k = min(m, n)
    return [(i, j) for i in range(k + 1) for j in range(k + 1)
            if (i, j) != (0, 0) and not (m == n and i == j == m)]


def fh_pairs(m: int, n: int) -> List[Tuple[int, int]]:
    """(i, j) with 0 < i + j < m + n for f (x)_{i,j} h."""
    return [(i, j) for i in range(m + 1) for j in range(n + 1) if 0 < i + j < m + n]


def contraction_norms(f: Kernel, symmetrized: bool = False) -> Dict[str, float]:
    """Norms of f (x)_{i,j} f and f (x)_{i,j} h over the non-trivial index pairs."""
    m, n = f.rank
    h = reversed_conjugate(f)
    op = contract_sym if symmetrized else contract
    out = {}
    for i, j in ff_pairs(m, n):
        out[f"ff({i},{j})"] = op(f, f, i, j).norm()
    for i, j in fh_pairs(m, n):
        out[f"fh({i},{j})"] = op(f, h, i, j).norm()
    return out


def _weighted(f: Kernel) -> Tuple[float, float]:
    """Weighted unsymmetrized contraction sums of the psi and phi routes."""
    m, n = f.rank
    h = reversed_conjugate(f)
    scale = (math.factorial(m) * math.factorial(n)) ** 2
    ff = sum(binom(m, i) * binom(n, i) * binom(n, j) * binom(m, j) * contract(f, f, i, j).norm() ** 2
             for i, j in ff_pairs(m, n))
    fh = sum(binom(m, i) ** 2 * binom(n, j) ** 2 * contract(f, h, i, j).norm() ** 2
             for i, j in fh_pairs(m, n))
    return scale * ff, scale * fh


def _psi_sum(aux: AuxKernels, family: Dict[int, Kernel], other: Dict[int, Kernel] = None) -> float:
    total = 0.0
    for r in aux.psi_range():
        a, b = family.get(r), (family if other is None else other).get(r)
        if a is None or b is None:
            continue
        total += _factorial_sq(aux.l - r) * inner(a, b).real
    return total


def _phi_sum(aux: AuxKernels, family: Dict[int, Kernel], other: Dict[int, Kernel] = None) -> float:
    total = 0.0
    for r in aux.phi_range():
        a, b = family.get(r), (family if other is None else other).get(r)
        if a is None or b is None:
            continue
        total += math.factorial(2 * aux.m - r) * math.factorial(2 * aux.n - r) * inner(a, b).real
    return total


def _require_order(f: Kernel, minimum: int = 1):
    if f.order < minimum:
        raise DomainError(f"need m + n >= {minimum}, got type {f.rank}")


def gap_direct(f: Kernel) -> float:
    _require_order(f)
    p = kernel_to_poly(f)
    second = expect_product(p, p)
    norm2 = abs_moment_exact(f, 2)
    gap = abs_moment_exact(f, 4) - norm2 * norm2 * 2 - second * conj(second)
    return _real(gap)


def gap_via_psi(f: Kernel, aux: AuxKernels = None) -> float:
    _require_order(f)
    aux = aux or aux_kernels(f)
    ff, _ = _weighted(f)
    return ff + _psi_sum(aux, aux.psi)


def gap_via_phi(f: Kernel, aux: AuxKernels = None) -> float:
    _require_order(f)
    aux = aux or aux_kernels(f)
    _, fh = _weighted(f)
    return fh + _phi_sum(aux, aux.phi)


def gap_via_derivative(f: Kernel, aux: AuxKernels = None) -> float:
    _require_order(f)
    if f.m == 0:
        # |F| = |conj F| and conj F has a holomorphic part
        return gap_via_derivative(reversed_conjugate(f))
    aux = aux or aux_kernels(f)
    return 2 * _psi_sum(aux, aux.theta, aux.psi) + _phi_sum(aux, aux.varsigma, aux.phi)


def fm_gap(f: Kernel, route: str = 'psi') -> float:
    """E|F|^4 - 2 (E|F|^2)^2 - |E F^2|^2 along one of GAP_ROUTES."""
    if route == 'direct':
        return gap_direct(f)
    if route == 'psi':
        return gap_via_psi(f)
    if route == 'phi':
        return gap_via_phi(f)
    if route == 'derivative':
        return gap_via_derivative(f)
    raise DomainError(f"unknown gap route '{route}', expected one of {', '.join(GAP_ROUTES)}")


@dataclass
class GapReport:
    direct: float
    psi: float
    phi: float
    derivative: float

    def max_rel_error(self) -> float:
        scale = max(1.0, abs(self.direct))
        return max(abs(v - self.direct) for v in (self.psi, self.phi, self.derivative)) / scale


def fm_gap_routes(f: Kernel) -> GapReport:
    aux = aux_kernels(f)
    return GapReport(gap_direct(f), gap_via_psi(f, aux), gap_via_phi(f, aux),
                     gap_via_derivative(f, aux if f.m else None))


def fourth_moment_kernel(f: Kernel, aux: AuxKernels = None) -> float:
    """E|F|^4 = sum_r ((l-r)!)^2 ||psi_r||^2 over all levels, from kernels only."""
    _require_order(f)
    aux = aux or aux_kernels(f)
    return float(sum(_factorial_sq(aux.l - r) * g.norm() ** 2 for r, g in aux.psi.items()))


def _gradients(p: WickPoly) -> Tuple[List[WickPoly], List[WickPoly]]:
    return [p.d_z(k) for k in range(p.d)], [p.d_zbar(k) for k in range(p.d)]


def fourth_moment_via_derivatives(f: Kernel) -> Exact:
    """(1/m) E[2 ||DF||^2 |F|^2 + <DF, D conj F> conj(F)^2] in exact arithmetic."""
    _require_order(f)
    if f.m == 0:
        return fourth_moment_via_derivatives(reversed_conjugate(f))
    p = kernel_to_poly(f)
    pbar = p.conj()
    dz, dzb = _gradients(p)
    norm_df = WickPoly.zero(p.d)
    cross = WickPoly.zero(p.d)
    for a, b in zip(dz, dzb):
        norm_df = norm_df + a * a.conj()
        cross = cross + a * b
    total = expect_product(norm_df * 2, p * pbar) + expect_product(cross, pbar * pbar)
    return total * inverse_int(f.m)


class DerivativeVariances(NamedTuple):
    d_norm: float
    dbar_norm: float
    cross: float


def variance_formulas(f: Kernel, aux: AuxKernels = None) -> DerivativeVariances:
    """Var ||DF||^2, Var ||Dbar F||^2, Var <DF, D conj F> from eta, xi and nu."""
    _require_order(f)
    aux = aux or aux_kernels(f)
    d_norm = sum(_factorial_sq(aux.l - r) * aux.eta[r].norm() ** 2
                 for r in aux.psi_range() if r in aux.eta)
    dbar_norm = sum(_factorial_sq(aux.l - r) * aux.xi[r].norm() ** 2
                    for r in aux.psi_range() if r in aux.xi)
    cross = sum(math.factorial(2 * aux.m - r) * math.factorial(2 * aux.n - r) * aux.nu[r].norm() ** 2
                for r in aux.phi_range() if r in aux.nu)
    return DerivativeVariances(float(d_norm), float(dbar_norm), float(cross))


def _variance(x: WickPoly) -> Exact:
    mean = expect_gaussian(x)
    return expect_product(x, x.conj()) - mean * conj(mean)


def variance_oracle(f: Kernel) -> DerivativeVariances:
    """The same three variances from the polynomial oracle."""
    _require_order(f)
    p = kernel_to_poly(f)
    dz, dzb = _gradients(p)
    zero = WickPoly.zero(p.d)
    d_norm, dbar_norm, cross = zero, zero, zero
    for a, b in zip(dz, dzb):
        d_norm = d_norm + a * a.conj()
        dbar_norm = dbar_norm + b * b.conj()
        cross = cross + a * b
    return DerivativeVariances(_real(_variance(d_norm)), _real(_variance(dbar_norm)),
                               _real(_variance(cross)))


@dataclass
class SandwichReport:
    s_unsym: float
    s_sym: float
    gap: float
    nonnegative: bool
    ordered: bool
    consistent: bool

    @property
    def lower_ratio(self) -> float:
        """gap / S_u, an instance value of the lower constant."""
        return self.gap / self.s_unsym if self.s_unsym else float('nan')

    @property
    def upper_ratio(self) -> float:
        return self.gap / self.s_sym if self.s_sym else float('nan')


def fmt_sandwich(f: Kernel, tol: float = 1e-9) -> SandwichReport:
    """Contraction sums on both sides of the gap, with the orderings they must satisfy."""
    _require_order(f, 2)
    s_u = sum(v ** 2 for v in contraction_norms(f).values())
    s_t = sum(v ** 2 for v in contraction_norms(f, symmetrized=True).values())
    gap = gap_via_psi(f)
    report = SandwichReport(
        s_unsym=s_u,
        s_sym=s_t,
        gap=gap,
        nonnegative=gap >= -tol,
        ordered=s_t <= s_u + tol,
        consistent=(abs(gap) <= tol) == (s_u <= tol),
    )
    logger.debug("fmt_sandwich %s: S_u=%.6g S_t=%.6g G=%.6g", f.rank, s_u, s_t, gap)
    return report
