"""Exact polynomials in zeta_1..zeta_d and their conjugates.

zeta and zeta-bar are independent formal symbols: conjugation only becomes
a relation at evaluation time and under Gaussian expectation. Variable
indices are 0-based in the API; the text form numbers them from 1.
"""

from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

import numpy as np

from ..errors import ShapeError
from .exact import ZERO, Exact, conj, exact, is_zero, real_fraction, imag_fraction, to_complex

Exponents = Tuple[int, ...]
Key = Tuple[Exponents, Exponents]
Scalar = Union[int, float, complex, Fraction, Exact]


def _add_exp(x: Exponents, y: Exponents) -> Exponents:
    return tuple(p + q for p, q in zip(x, y))


class WickPoly:
    """Immutable polynomial sum c_{a,b} zeta^a zetabar^b with exact coefficients."""

    __slots__ = ('d', '_terms')

    def __init__(self, d: int, terms: Mapping[Key, Scalar] = None):
        if d < 1:
            raise ShapeError(f"variable count must be positive, got {d}")
        clean: Dict[Key, Exact] = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(int(x) for x in a), tuple(int(x) for x in b)
            if len(a) != d or len(b) != d:
                raise ShapeError(f"exponent vectors must have length {d}")
            if min(a + b) < 0:
                raise ShapeError("negative exponent")
            c = exact(c)
            key = (a, b)
            if key in clean:
                c = clean[key] + c
            clean[key] = c
        self.d = d
        self._terms = {k: c for k, c in clean.items() if not is_zero(c)}

    @classmethod
    def _raw(cls, d: int, terms: Dict[Key, Exact]) -> 'WickPoly':
        obj = cls.__new__(cls)
        obj.d = d
        obj._terms = {k: c for k, c in terms.items() if not is_zero(c)}
        return obj

    # Constructors

    @classmethod
    def zero(cls, d: int) -> 'WickPoly':
        return cls._raw(d, {})

    @classmethod
    def const(cls, d: int, c: Scalar = 1) -> 'WickPoly':
        z = (0,) * d
        return cls._raw(d, {(z, z): exact(c)})

    @classmethod
    def monomial(cls, d: int, a: Sequence[int], b: Sequence[int], c: Scalar = 1) -> 'WickPoly':
        return cls(d, {(tuple(a), tuple(b)): c})

    @classmethod
    def zeta(cls, d: int, k: int) -> 'WickPoly':
        a = [0] * d
        a[k] = 1
        return cls.monomial(d, a, [0] * d)

    @classmethod
    def zeta_bar(cls, d: int, k: int) -> 'WickPoly':
        b = [0] * d
        b[k] = 1
        return cls.monomial(d, [0] * d, b)

    @classmethod
    def linear(cls, coeffs: Sequence[Scalar]) -> 'WickPoly':
        """sum_k coeffs[k] zeta_k, i.e. Z(f) for a vector f."""
        d = len(coeffs)
        total = cls.zero(d)
        for k, c in enumerate(coeffs):
            total = total + cls.zeta(d, k) * c
        return total

    # Inspection

    @property
    def terms(self) -> Mapping[Key, Exact]:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(a) + sum(b) for a, b in self._terms), default=0)

    def holo_degree(self) -> int:
        return max((sum(a) for a, _ in self._terms), default=0)

    def anti_degree(self) -> int:
        return max((sum(b) for _, b in self._terms), default=0)

    def constant_term(self) -> Exact:
        z = (0,) * self.d
        return self._terms.get((z, z), ZERO)

    def coefficient(self, a: Sequence[int], b: Sequence[int]) -> Exact:
        return self._terms.get((tuple(a), tuple(b)), ZERO)

    # Ring operations

    def _check(self, other: 'WickPoly'):
        if self.d != other.d:
            raise ShapeError(f"variable counts differ: {self.d} vs {other.d}")

    def __add__(self, other) -> 'WickPoly':
        if not isinstance(other, WickPoly):
            other = WickPoly.const(self.d, other)
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return WickPoly._raw(self.d, out)

    __radd__ = __add__

    def __neg__(self) -> 'WickPoly':
        return WickPoly._raw(self.d, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> 'WickPoly':
        if not isinstance(other, WickPoly):
            other = WickPoly.const(self.d, other)
        return self + (-other)

    def __rsub__(self, other) -> 'WickPoly':
        return (-self) + other

    def scale(self, c: Scalar) -> 'WickPoly':
        c = exact(c)
        return WickPoly._raw(self.d, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other) -> 'WickPoly':
        if not isinstance(other, WickPoly):
            return self.scale(other)
        self._check(other)
        out: Dict[Key, Exact] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (_add_exp(a1, a2), _add_exp(b1, b2))
                prod = c1 * c2
                out[key] = out[key] + prod if key in out else prod
        return WickPoly._raw(self.d, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'WickPoly':
        result = WickPoly.const(self.d, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, WickPoly):
            return NotImplemented
        return self.d == other.d and self._terms == other._terms

    __hash__ = None

    def conj(self) -> 'WickPoly':
        """Formal conjugate: swap zeta and zetabar exponents, conjugate coefficients."""
        return WickPoly._raw(self.d, {(b, a): conj(c) for (a, b), c in self._terms.items()})

    # Wirtinger derivatives

    def d_z(self, k: int) -> 'WickPoly':
        if not 0 <= k < self.d:
            raise ShapeError(f"variable index {k} out of range")
        out = {}
        for (a, b), c in self._terms.items():
            if a[k]:
                na = a[:k] + (a[k] - 1,) + a[k + 1:]
                out[(na, b)] = c * a[k]
        return WickPoly._raw(self.d, out)

    def d_zbar(self, k: int) -> 'WickPoly':
        if not 0 <= k < self.d:
            raise ShapeError(f"variable index {k} out of range")
        out = {}
        for (a, b), c in self._terms.items():
            if b[k]:
                nb = b[:k] + (b[k] - 1,) + b[k + 1:]
                out[(a, nb)] = c * b[k]
        return WickPoly._raw(self.d, out)

    # Evaluation

    def eval_at(self, point) -> Union[complex, np.ndarray]:
        """Substitute zeta = point, zetabar = conj(point); point may be (d,) or (..., d)."""
        pt = np.asarray(point, dtype=complex)
        if pt.shape[-1:] != (self.d,):
            raise ShapeError(f"point must have trailing dimension {self.d}")
        ptc = np.conj(pt)
        out = np.zeros(pt.shape[:-1], dtype=complex)
        for (a, b), c in self._terms.items():
            term = np.full(pt.shape[:-1], to_complex(c), dtype=complex)
            for k in range(self.d):
                if a[k]:
                    term = term * pt[..., k] ** a[k]
                if b[k]:
                    term = term * ptc[..., k] ** b[k]
            out = out + term
        return complex(out) if out.ndim == 0 else out

    def max_abs_diff(self, other: 'WickPoly') -> float:
        """Largest coefficient difference, in floating point."""
        self._check(other)
        diff = self - other
        return max((abs(to_complex(c)) for c in diff._terms.values()), default=0.0)

    # Text form

    def sorted_terms(self) -> Iterable[Tuple[Key, Exact]]:
        return sorted(self._terms.items(),
                      key=lambda kv: (-(sum(kv[0][0]) + sum(kv[0][1])), tuple(-x for x in kv[0][0]),
                                      tuple(-x for x in kv[0][1])))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            factors = []
            for k in range(self.d):
                for name, p in ((f"z{k + 1}", a[k]), (f"zb{k + 1}", b[k])):
                    if p == 1:
                        factors.append(name)
                    elif p:
                        factors.append(f"{name}^{p}")
            coeff = _coeff_text(c)
            if not factors:
                parts.append(coeff)
            elif coeff == "1":
                parts.append("*".join(factors))
            elif coeff == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append(coeff + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"WickPoly(d={self.d}, {self.to_text()})"


def _coeff_text(c: Exact) -> str:
    re, im = real_fraction(c), imag_fraction(c)
    if im == 0:
        return str(re)
    if re == 0:
        return f"({im}*I)"
    sign = "+" if im > 0 else "-"
    return f"({re} {sign} {abs(im)}*I)"


def compose(phi: WickPoly, inputs: Sequence[WickPoly]) -> WickPoly:
    """phi(F_1, ..., F_m): substitute w_j -> F_j and wbar_j -> conj(F_j)."""
    if len(inputs) != phi.d:
        raise ShapeError(f"need {phi.d} inputs, got {len(inputs)}")
    d = inputs[0].d
    cache: Dict[Tuple[int, int, bool], WickPoly] = {}

    def power(j, p, bar):
        key = (j, p, bar)
        if key not in cache:
            base = inputs[j].conj() if bar else inputs[j]
            cache[key] = base ** p
        return cache[key]

    total = WickPoly.zero(d)
    for (a, b), c in phi.terms.items():
        term = WickPoly.const(d, c)
        for j in range(phi.d):
            if a[j]:
                term = term * power(j, a[j], False)
            if b[j]:
                term = term * power(j, b[j], True)
        total = total + term
    return total


def coordinate_polys(d: int):
    """(zeta_0, ..., zeta_{d-1}) as WickPolys."""
    return [WickPoly.zeta(d, k) for k in range(d)]


def random_poly(rng: np.random.Generator, d: int, degree: int, terms: int = 6,
                denominator: int = 4) -> WickPoly:
    """Random polynomial with small Gaussian-rational coefficients."""
    out = {}
    for _ in range(terms):
        total = int(rng.integers(0, degree + 1))
        exps = rng.multinomial(total, [1.0 / (2 * d)] * (2 * d))
        a, b = tuple(int(x) for x in exps[:d]), tuple(int(x) for x in exps[d:])
        re = Fraction(int(rng.integers(-4, 5)), denominator)
        im = Fraction(int(rng.integers(-4, 5)), denominator)
        out[(a, b)] = exact(re) + exact(im) * exact(1j)
    return WickPoly(d, out)
