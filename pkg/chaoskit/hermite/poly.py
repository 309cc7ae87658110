"""Complex Hermite polynomials J_{m,n}(z, rho) and real Hermite polynomials H_n.

    J_{m,n}(z, rho) = sum_{r=0}^{m^n} (-1)^r r! C(m,r) C(n,r) z^{m-r} zbar^{n-r} rho^r

Coefficients are kept as exact Python integers; rho stays symbolic until
evaluation. ZPoly is the small polynomial ring in (z, zbar, rho) used to
state the recursion, derivative, Rodrigues and eigenfunction identities
exactly.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple, Union

from ..errors import DomainError
from ..utils import check_degree_cap

logger = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 16

# (power of z, power of zbar, power of rho)
Monomial = Tuple[int, int, int]
Term = Tuple[int, int, int, int]


def _term_order(term: Term):
    a, b, r, _ = term
    return (-(a + b), -a, -b, r)


def _eval_terms(terms, z: complex, rho):
    zc = complex(z).conjugate()
    z = complex(z)
    total = 0j
    for a, b, r, c in terms:
        total += c * (z ** a) * (zc ** b) * (rho ** r)
    return total


@dataclass(frozen=True)
class ZPoly:
    """Exact integer polynomial in z, zbar and rho.

    Powers of rho may be negative (needed while differentiating
    exp(-|z|^2/rho)). Terms are stored in canonical order with no zero
    coefficients, so equality is structural.
    """
    terms: Tuple[Term, ...] = ()

    @classmethod
    def from_dict(cls, coeffs: Dict[Monomial, int]) -> 'ZPoly':
        terms = [(a, b, r, c) for (a, b, r), c in coeffs.items() if c != 0]
        return cls(tuple(sorted(terms, key=_term_order)))

    @classmethod
    def const(cls, c: int) -> 'ZPoly':
        return cls.from_dict({(0, 0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, r: int = 0, c: int = 1) -> 'ZPoly':
        return cls.from_dict({(a, b, r): c})

    def as_dict(self) -> Dict[Monomial, int]:
        return {(a, b, r): c for a, b, r, c in self.terms}

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: 'ZPoly') -> 'ZPoly':
        if isinstance(other, int):
            other = ZPoly.const(other)
        out = self.as_dict()
        for a, b, r, c in other.terms:
            out[(a, b, r)] = out.get((a, b, r), 0) + c
        return ZPoly.from_dict(out)

    __radd__ = __add__

    def __neg__(self) -> 'ZPoly':
        return ZPoly(tuple((a, b, r, -c) for a, b, r, c in self.terms))

    def __sub__(self, other: 'ZPoly') -> 'ZPoly':
        if isinstance(other, int):
            other = ZPoly.const(other)
        return self + (-other)

    def __mul__(self, other: Union['ZPoly', int]) -> 'ZPoly':
        if isinstance(other, int):
            return ZPoly.from_dict({(a, b, r): c * other for a, b, r, c in self.terms})
        out: Dict[Monomial, int] = {}
        for a1, b1, r1, c1 in self.terms:
            for a2, b2, r2, c2 in other.terms:
                key = (a1 + a2, b1 + b2, r1 + r2)
                out[key] = out.get(key, 0) + c1 * c2
        return ZPoly.from_dict(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'ZPoly':
        result = ZPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def d_z(self) -> 'ZPoly':
        return ZPoly.from_dict({(a - 1, b, r): c * a for a, b, r, c in self.terms if a})

    def d_zbar(self) -> 'ZPoly':
        return ZPoly.from_dict({(a, b - 1, r): c * b for a, b, r, c in self.terms if b})

    def d_rho(self) -> 'ZPoly':
        return ZPoly.from_dict({(a, b, r - 1): c * r for a, b, r, c in self.terms if r})

    def evaluate(self, z: complex, rho) -> complex:
        return _eval_terms(self.terms, z, rho)

    def to_text(self) -> str:
        """Canonical text form, e.g. ``z*zbar - rho``."""
        if not self.terms:
            return "0"
        parts = []
        for idx, (a, b, r, c) in enumerate(self.terms):
            factors = []
            for name, p in (("z", a), ("zbar", b), ("rho", r)):
                if p == 1:
                    factors.append(name)
                elif p:
                    factors.append(f"{name}^{p}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if idx == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)


Z = ZPoly.monomial(1, 0)
ZBAR = ZPoly.monomial(0, 1)
RHO = ZPoly.monomial(0, 0, 1)
RHO_INV = ZPoly.monomial(0, 0, -1)


@dataclass(frozen=True)
class HermitePoly:
    """J_{m,n} as an exact term list of (z power, zbar power, rho power, coeff)."""
    m: int
    n: int
    terms: Tuple[Term, ...]

    @property
    def poly(self) -> ZPoly:
        return ZPoly(self.terms)

    def evaluate(self, z: complex, rho) -> complex:
        return _eval_terms(self.terms, z, rho)

    def to_text(self, rho: Optional[float] = None) -> str:
        """Symbolic text, or with rho bound, a polynomial in z and zbar only."""
        if rho is None:
            return self.poly.to_text()
        if not rho > 0:
            raise DomainError(f"rho must be positive, got {rho}")
        parts = []
        for a, b, r, c in self.terms:
            coeff = c * rho ** r
            if coeff == 0:
                continue
            factors = [name if p == 1 else f"{name}^{p}" for name, p in (("z", a), ("zbar", b)) if p]
            mag = format(abs(coeff), '.12g')
            if not factors:
                body = mag
            elif mag == "1":
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if not parts:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(parts) or "0"

    def to_json(self) -> dict:
        return {
            'm': self.m,
            'n': self.n,
            'terms': [list(t) for t in self.terms],
        }


def j_coefficient(m: int, n: int, r: int) -> int:
    """Coefficient (-1)^r r! C(m,r) C(n,r) of the rho^r term of J_{m,n}."""
    return (-1) ** r * math.factorial(r) * math.comb(m, r) * math.comb(n, r)


@lru_cache(maxsize=None)
def _j_terms(m: int, n: int) -> Tuple[Term, ...]:
    return tuple((m - r, n - r, r, j_coefficient(m, n, r)) for r in range(min(m, n) + 1))


def _check_degrees(m: int, n: int, cap: Optional[int]):
    if m < 0 or n < 0:
        raise DomainError(f"degrees must be non-negative, got ({m}, {n})")
    check_degree_cap(m + n, cap)


def poly_J(m: int, n: int, cap: Optional[int] = DEFAULT_DEGREE_CAP) -> HermitePoly:
    """Exact symbolic J_{m,n}(z, rho)."""
    _check_degrees(m, n, cap)
    return HermitePoly(m, n, _j_terms(m, n))


def eval_J(m: int, n: int, z: complex, rho, cap: Optional[int] = DEFAULT_DEGREE_CAP) -> complex:
    """Evaluate J_{m,n}(z, rho) with exact integer coefficients.

    Args:
        m: holomorphic degree
        n: antiholomorphic degree
        z: complex argument
        rho: variance parameter, must be positive
        cap: degree cap on m + n; None disables the check

    Returns:
        Complex value, summed in ascending powers of rho.
    """
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")
    _check_degrees(m, n, cap)
    return _eval_terms(_j_terms(m, n), z, rho)


def eval_H(n: int, x):
    """Probabilists' Hermite polynomial H_n(x); x may be a scalar or an array."""
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    prev = x * 0 + 1.0
    if n == 0:
        return prev
    cur = x * 1.0
    for k in range(1, n):
        prev, cur = cur, x * cur - k * prev
    return cur


def gf_partial_sum(lam: complex, z: complex, rho: float, M: int, N: int) -> complex:
    """Truncated generating function sum_{m<=M, n<=N} lam_bar^m lam^n / (m! n!) J_{m,n}(z, rho)."""
    if M < 0 or N < 0:
        raise DomainError("truncation orders must be non-negative")
    lam = complex(lam)
    lam_c = lam.conjugate()
    total = 0j
    for m in range(M + 1):
        for n in range(N + 1):
            weight = (lam_c ** m) * (lam ** n) / (math.factorial(m) * math.factorial(n))
            total += weight * eval_J(m, n, z, rho, cap=None)
    return total


# Expansion results map a degree pair to (integer coefficient, power of rho).
JExpansion = Dict[Tuple[int, int], Tuple[int, int]]


def J_product_expand(m: int, n: int, p: int, q: int) -> JExpansion:
    """J_{m,n} J_{p,q} in the J basis.

    Sum over i <= m^q, j <= n^p of C(m,i)C(n,j)C(p,j)C(q,i) i! j! rho^{i+j}
    J_{m+p-i-j, n+q-i-j}. Terms with the same i+j land on the same level.
    """
    out: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for i in range(min(m, q) + 1):
        for j in range(min(n, p) + 1):
            c = (math.comb(m, i) * math.comb(n, j) * math.comb(p, j) * math.comb(q, i)
                 * math.factorial(i) * math.factorial(j))
            level = (m + p - i - j, n + q - i - j)
            prev = out.get(level, (0, i + j))[0]
            out[level] = (prev + c, i + j)
    return out


def monomial_to_J(m: int, n: int) -> JExpansion:
    """z^m zbar^n = sum_r C(m,r) C(n,r) r! rho^r J_{m-r,n-r}."""
    return {
        (m - r, n - r): (math.comb(m, r) * math.comb(n, r) * math.factorial(r), r)
        for r in range(min(m, n) + 1)
    }


def expansion_to_zpoly(expansion: JExpansion) -> ZPoly:
    """Re-assemble a J-basis expansion into a ZPoly."""
    total = ZPoly()
    for (a, b), (c, r) in expansion.items():
        total = total + poly_J(a, b, cap=None).poly * ZPoly.monomial(0, 0, r, c)
    return total


def rodrigues_poly(m: int, n: int) -> ZPoly:
    """J_{m,n} from (-rho)^{m+n} e^{|z|^2/rho} dbar^m d^n e^{-|z|^2/rho}.

    The exponential is carried implicitly: d(P e) = (dP - (zbar/rho) P) e and
    dbar(P e) = (dbar P - (z/rho) P) e.
    """
    p = ZPoly.const(1)
    for _ in range(n):
        p = p.d_z() - ZBAR * RHO_INV * p
    for _ in range(m):
        p = p.d_zbar() - Z * RHO_INV * p
    return p * ((-RHO) ** (m + n))


def eigen_operator(p: ZPoly) -> Tuple[ZPoly, ZPoly]:
    """Split the eigen-operator into its real-coefficient parts (A p, B p).

    A = z d + zbar dbar - 2 rho d dbar and B = z d - zbar dbar, so the full
    operator with parameter c is A + i c B.
    """
    dz = p.d_z()
    dzb = p.d_zbar()
    a_part = Z * dz + ZBAR * dzb - RHO * dz.d_zbar() * 2
    b_part = Z * dz - ZBAR * dzb
    return a_part, b_part

