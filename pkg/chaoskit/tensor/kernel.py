"""Dense kernels f in H^{(.)m} (x) conj(H)^{(.)n} over C^d.

Axis layout of ``coeffs``: the first m axes are holomorphic slots, the last
n axes antiholomorphic slots, each of length d. Index k refers to basis
vector e_k (0-based).
"""

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ..errors import ShapeError, SymmetryError

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Kernel:
    d: int
    m: int
    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.d < 1 or self.m < 0 or self.n < 0:
            raise ShapeError(f"invalid kernel type d={self.d}, m={self.m}, n={self.n}")
        arr = np.array(self.coeffs, dtype=complex)
        expected = (self.d,) * (self.m + self.n)
        if arr.shape != expected:
            raise ShapeError(f"coefficient shape {arr.shape} does not match {expected}")
        arr.setflags(write=False)
        object.__setattr__(self, 'coeffs', arr)

    # Constructors

    @classmethod
    def zeros(cls, d: int, m: int, n: int) -> 'Kernel':
        return cls(d, m, n, np.zeros((d,) * (m + n), dtype=complex))

    @classmethod
    def scalar(cls, c: complex, d: int) -> 'Kernel':
        return cls(d, 0, 0, np.array(complex(c)))

    @classmethod
    def basis(cls, d: int, holo: Sequence[int] = (), anti: Sequence[int] = (),
              coeff: complex = 1.0) -> 'Kernel':
        """Unsymmetrized e_{holo[0]} (x) ... (x) ebar_{anti[0]} (x) ... scaled by coeff."""
        arr = np.zeros((d,) * (len(holo) + len(anti)), dtype=complex)
        arr[tuple(holo) + tuple(anti)] = coeff
        return cls(d, len(holo), len(anti), arr)

    @classmethod
    def vector(cls, values: Sequence[complex]) -> 'Kernel':
        """(1,0) kernel with the given coordinates."""
        values = np.asarray(values, dtype=complex)
        return cls(len(values), 1, 0, values)

    # Properties

    @property
    def rank(self):
        return (self.m, self.n)

    @property
    def order(self) -> int:
        return self.m + self.n

    def is_symmetric(self, tol: float = SYMMETRY_TOL) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.coeffs))))
        return bool(np.max(np.abs(symmetrize(self).coeffs - self.coeffs)) <= tol * scale)

    def require_symmetric(self, tol: float = SYMMETRY_TOL):
        if not self.is_symmetric(tol):
            raise SymmetryError(f"kernel of type ({self.m},{self.n}) is not symmetric")

    def norm(self) -> float:
        return norm(self)

    def scalar_value(self) -> complex:
        if self.order:
            raise ShapeError("kernel is not a scalar")
        return complex(self.coeffs[()])

    # Arithmetic (same type only)

    def _check_same(self, other: 'Kernel'):
        if (self.d, self.m, self.n) != (other.d, other.m, other.n):
            raise ShapeError(
                f"kernel types differ: ({self.d},{self.m},{self.n}) vs ({other.d},{other.m},{other.n})")

    def __add__(self, other: 'Kernel') -> 'Kernel':
        self._check_same(other)
        return Kernel(self.d, self.m, self.n, self.coeffs + other.coeffs)

    def __sub__(self, other: 'Kernel') -> 'Kernel':
        self._check_same(other)
        return Kernel(self.d, self.m, self.n, self.coeffs - other.coeffs)

    def __mul__(self, c: complex) -> 'Kernel':
        return Kernel(self.d, self.m, self.n, self.coeffs * complex(c))

    __rmul__ = __mul__

    def __neg__(self) -> 'Kernel':
        return self * -1

    def allclose(self, other: 'Kernel', tol: float = 1e-12) -> bool:
        self._check_same(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs), initial=0.0) <= tol)

    # Serialization

    def to_json(self) -> dict:
        entries = []
        for idx in zip(*np.nonzero(self.coeffs)):
            idx = tuple(int(i) for i in idx)
            v = self.coeffs[idx]
            entries.append([list(idx), float(v.real), float(v.imag)])
        return {'d': self.d, 'm': self.m, 'n': self.n, 'entries': entries}

    @classmethod
    def from_json(cls, obj: dict) -> 'Kernel':
        d, m, n = int(obj['d']), int(obj['m']), int(obj['n'])
        arr = np.zeros((d,) * (m + n), dtype=complex)
        for idx, re, im in obj.get('entries', []):
            if len(idx) != m + n:
                raise ShapeError(f"entry index {idx} does not have {m + n} slots")
            arr[tuple(idx)] = complex(re, im)
        return cls(d, m, n, arr)


def symmetrize(raw: Union[Kernel, np.ndarray], m: Optional[int] = None,
               n: Optional[int] = None) -> Kernel:
    """Average over all permutations of the holomorphic slots and of the antiholomorphic slots.

    Args:
        raw: a Kernel, or a bare array together with m and n
        m: holomorphic rank (array input only)
        n: antiholomorphic rank (array input only)
    """
    if isinstance(raw, Kernel):
        d, m, n, arr = raw.d, raw.m, raw.n, raw.coeffs
    else:
        if m is None or n is None:
            raise ShapeError("ranks m and n are required for array input")
        arr = np.asarray(raw, dtype=complex)
        if arr.ndim != m + n:
            raise ShapeError(f"array has {arr.ndim} axes, expected {m + n}")
        d = arr.shape[0] if arr.ndim else 1
        if any(s != d for s in arr.shape):
            raise ShapeError(f"array shape {arr.shape} is not cubic")

    if m <= 1 and n <= 1:
        return Kernel(d, m, n, arr)
    acc = np.zeros_like(arr)
    for ph in itertools.permutations(range(m)):
        for pa in itertools.permutations(range(m, m + n)):
            acc += np.transpose(arr, ph + pa)
    return Kernel(d, m, n, acc / (math.factorial(m) * math.factorial(n)))


def reversed_conjugate(f: Kernel) -> Kernel:
    """h[q;p] = conj(f[p;q]), so that conj(I_{m,n}(f)) = I_{n,m}(h)."""
    axes = tuple(range(f.m, f.m + f.n)) + tuple(range(f.m))
    return Kernel(f.d, f.n, f.m, np.conj(np.transpose(f.coeffs, axes)))


def inner(f: Kernel, g: Kernel) -> complex:
    """sum f[p;q] conj(g[p;q])."""
    f._check_same(g)
    return complex(np.vdot(g.coeffs, f.coeffs))


def norm(f: Kernel) -> float:
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))


def random_kernel(rng: np.random.Generator, d: int, m: int, n: int,
                  symmetric: bool = True) -> Kernel:
    """Kernel with standard complex Gaussian entries, symmetrized by default."""
    shape = (d,) * (m + n)
    arr = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    k = Kernel(d, m, n, arr)
    return symmetrize(k) if symmetric else k


def identity_kernel(d: int, scale: complex = 1.0) -> Kernel:
    """(1,1) kernel scale * sum_k e_k (x) ebar_k."""
    return Kernel(d, 1, 1, scale * np.eye(d, dtype=complex))


def tensor_power(vec: Sequence[complex], p: int, q: int) -> Kernel:
    """f^{(x)p} (x) conj(f)^{(x)q} for a vector f in C^d."""
    v = np.asarray(vec, dtype=complex)
    arr = np.array(1.0 + 0j)
    for _ in range(p):
        arr = np.multiply.outer(arr, v)
    for _ in range(q):
        arr = np.multiply.outer(arr, np.conj(v))
    return Kernel(len(v), p, q, arr)
