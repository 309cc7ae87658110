"""Exact complex-rational scalars (sympy Gaussian rationals QQ_I).

Floats are lifted exactly through their binary expansion, so a float
kernel and its exact image agree bit for bit before any arithmetic.
"""

import math
import numbers
from fractions import Fraction

import numpy as np
from sympy.polys.domains import QQ, QQ_I

Exact = QQ_I.dtype

ZERO = QQ_I(0, 0)
ONE = QQ_I(1, 0)


def _rational(x):
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, numbers.Integral):
        return QQ(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot lift non-finite value {x}")
    num, den = x.as_integer_ratio()
    return QQ(num, den)


def exact(value) -> Exact:
    """Lift an int, Fraction, float or complex to an exact Gaussian rational."""
    if isinstance(value, Exact):
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return QQ_I(_rational(value.real), _rational(value.imag))
    return QQ_I(_rational(value), QQ(0))


def _fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def real_fraction(c: Exact) -> Fraction:
    return _fraction(c.x)


def imag_fraction(c: Exact) -> Fraction:
    return _fraction(c.y)


def to_complex(c: Exact) -> complex:
    return complex(float(_fraction(c.x)), float(_fraction(c.y)))


def conj(c: Exact) -> Exact:
    return QQ_I(c.x, -c.y)


def is_zero(c: Exact) -> bool:
    return c.x == 0 and c.y == 0


def inverse_int(k: int) -> Exact:
    """1/k as an exact scalar."""
    return QQ_I(QQ(1, k), QQ(0))
