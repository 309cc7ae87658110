"""Finite chaos decompositions F = sum_{(m,n)} I_{m,n}(f_{m,n})."""

import itertools
import logging
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Mapping, Optional, Tuple

import numpy as np

from ..errors import ShapeError
from ..polyfun import WickPoly, expect_gaussian, is_zero, to_complex
from ..tensor import Kernel, norm, reversed_conjugate

logger = logging.getLogger(__name__)

Level = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class ChaosExpansion:
    """Map (m, n) -> symmetric Kernel over C^d, finite support.

    Levels whose kernel is identically zero are dropped on construction.
    """
    d: int
    levels: Mapping[Level, Kernel] = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 1:
            raise ShapeError(f"dimension must be positive, got {self.d}")
        clean: Dict[Level, Kernel] = {}
        for key, f in self.levels.items():
            if f.d != self.d:
                raise ShapeError(f"kernel dimension {f.d} does not match expansion dimension {self.d}")
            if tuple(key) != f.rank:
                raise ShapeError(f"level {key} holds a kernel of type {f.rank}")
            if np.any(f.coeffs):
                clean[f.rank] = f
        object.__setattr__(self, 'levels', MappingProxyType(clean))

    @classmethod
    def zero(cls, d: int) -> 'ChaosExpansion':
        return cls(d, {})

    @classmethod
    def constant(cls, c: complex, d: int) -> 'ChaosExpansion':
        return cls(d, {(0, 0): Kernel.scalar(c, d)})

    @classmethod
    def from_kernel(cls, f: Kernel) -> 'ChaosExpansion':
        return cls(f.d, {f.rank: f})

    @classmethod
    def from_kernels(cls, kernels: Iterable[Kernel], d: int) -> 'ChaosExpansion':
        """Sum kernels that land on the same level."""
        acc: Dict[Level, Kernel] = {}
        for f in kernels:
            acc[f.rank] = acc[f.rank] + f if f.rank in acc else f
        return cls(d, acc)

    # Inspection

    def support(self):
        return sorted(self.levels)

    def max_level(self) -> Level:
        return max(self.levels, key=lambda mn: (mn[0] + mn[1], mn), default=(0, 0))

    def degree(self) -> int:
        return max((m + n for m, n in self.levels), default=0)

    @property
    def mean(self) -> complex:
        f = self.levels.get((0, 0))
        return f.scalar_value() if f is not None else 0j

    def project(self, m: int, n: int) -> Kernel:
        return self.levels.get((m, n)) or Kernel.zeros(self.d, m, n)

    def norm2(self) -> float:
        """E|F|^2 by Parseval: sum m! n! ||f_{m,n}||^2."""
        return float(sum(math.factorial(m) * math.factorial(n) * norm(f) ** 2
                         for (m, n), f in self.levels.items()))

    def variance(self) -> float:
        return self.norm2() - abs(self.mean) ** 2

    # Algebra

    def _check(self, other: 'ChaosExpansion'):
        if self.d != other.d:
            raise ShapeError(f"expansion dimensions differ: {self.d} vs {other.d}")

    def __add__(self, other: 'ChaosExpansion') -> 'ChaosExpansion':
        self._check(other)
        out = dict(self.levels)
        for key, f in other.levels.items():
            out[key] = out[key] + f if key in out else f
        return ChaosExpansion(self.d, out)

    def __neg__(self) -> 'ChaosExpansion':
        return self.scale(-1)

    def __sub__(self, other: 'ChaosExpansion') -> 'ChaosExpansion':
        return self + (-other)

    def scale(self, c: complex) -> 'ChaosExpansion':
        return ChaosExpansion(self.d, {k: f * c for k, f in self.levels.items()})

    __mul__ = scale
    __rmul__ = scale

    def map_levels(self, factor: Callable[[int, int], complex]) -> 'ChaosExpansion':
        """Multiply level (m, n) by factor(m, n)."""
        return ChaosExpansion(self.d, {(m, n): f * factor(m, n) for (m, n), f in self.levels.items()})

    def max_abs_diff(self, other: 'ChaosExpansion') -> float:
        self._check(other)
        keys = set(self.levels) | set(other.levels)
        return max((float(np.max(np.abs(self.project(*k).coeffs - other.project(*k).coeffs),
                                 initial=0.0)) for k in keys), default=0.0)

    def is_close(self, other: 'ChaosExpansion', tol: float = 1e-10) -> bool:
        return self.max_abs_diff(other) <= tol

    # Serialization

    def to_json(self) -> dict:
        return {'d': self.d, 'levels': [f.to_json() for _, f in sorted(self.levels.items())]}

    @classmethod
    def from_json(cls, obj: dict) -> 'ChaosExpansion':
        d = int(obj['d'])
        return cls.from_kernels((Kernel.from_json(k) for k in obj.get('levels', [])), d)

    def __repr__(self):
        levels = ", ".join(f"({m},{n})" for m, n in self.support())
        return f"ChaosExpansion(d={self.d}, levels=[{levels}])"


def project(F: ChaosExpansion, m: int, n: int) -> Kernel:
    """pi_{m,n} F as a kernel (zero when the level is absent)."""
    return F.project(m, n)


def conj_expansion(F: ChaosExpansion) -> ChaosExpansion:
    """Expansion of conj(F): level (m, n) moves to (n, m) with the reversed conjugate kernel."""
    return ChaosExpansion(F.d, {(n, m): reversed_conjugate(f) for (m, n), f in F.levels.items()})


def _derivative(p: WickPoly, holo: Tuple[int, ...], anti: Tuple[int, ...],
                cache: Dict) -> WickPoly:
    key = (holo, anti)
    if key in cache:
        return cache[key]
    if anti:
        out = _derivative(p, holo, anti[:-1], cache).d_zbar(anti[-1])
    elif holo:
        out = _derivative(p, holo[:-1], (), cache).d_z(holo[-1])
    else:
        out = p
    cache[key] = out
    return out


def stroock_expand(p: WickPoly, max_level: Optional[Level] = None) -> ChaosExpansion:
    """Chaos decomposition of a polynomial functional.

    f_{a,b}[i; j] = E[d_z^{i} d_zbar^{j} P] / (a! b!), evaluated in exact
    arithmetic over sorted index tuples and spread to all permutations.
    """
    d = p.d
    top_h, top_a = max_level or (p.holo_degree(), p.anti_degree())
    cache: Dict = {}
    levels: Dict[Level, Kernel] = {}
    for a in range(top_h + 1):
        for b in range(top_a + 1):
            if a + b > p.degree():
                continue
            arr = np.zeros((d,) * (a + b), dtype=complex)
            scale = math.factorial(a) * math.factorial(b)
            for holo in itertools.combinations_with_replacement(range(d), a):
                for anti in itertools.combinations_with_replacement(range(d), b):
                    val = expect_gaussian(_derivative(p, holo, anti, cache))
                    if is_zero(val):
                        continue
                    v = to_complex(val) / scale
                    for ph in set(itertools.permutations(holo)):
                        for pa in set(itertools.permutations(anti)):
                            arr[ph + pa] = v
            if np.any(arr):
                levels[(a, b)] = Kernel(d, a, b, arr)
    logger.debug("stroock_expand: degree %d, levels %s", p.degree(), sorted(levels))
    return ChaosExpansion(d, levels)
