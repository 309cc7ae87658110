"""Fourth-moment-theorem diagnostic over a sequence of kernels of one type."""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from ..chaos import eval_integral_batch
from ..errors import DomainError, ShapeError
from ..tensor import Kernel, identity_kernel
from ..utils import MIN_MC_SAMPLES, complex_cov, normality_distance, seeded_chunks
from .aux import aux_kernels
from .fourth import (DerivativeVariances, contraction_norms, fourth_moment_kernel,
                     gap_via_psi, variance_formulas)

logger = logging.getLogger(__name__)


@dataclass
class FMTRow:
    index: int
    d: int
    sigma2: float
    second: complex
    fourth_moment: float
    fourth_target: float
    gap: float
    variances: DerivativeVariances
    normality: float
    threshold: float
    cond_iii: Dict[str, float] = field(default_factory=dict)
    cond_iv: Dict[str, float] = field(default_factory=dict)

    @property
    def max_iii(self) -> float:
        return max(self.cond_iii.values(), default=0.0)

    @property
    def max_iv(self) -> float:
        return max(self.cond_iv.values(), default=0.0)

    def to_row(self) -> Dict[str, object]:
        """Flat record for CSV output."""
        row = {
            'k': self.index,
            'd': self.d,
            'sigma2': self.sigma2,
            'second_re': self.second.real,
            'second_im': self.second.imag,
            'fourth_moment': self.fourth_moment,
            'fourth_target': self.fourth_target,
            'gap': self.gap,
            'var_d_norm': self.variances.d_norm,
            'var_dbar_norm': self.variances.dbar_norm,
            'var_cross': self.variances.cross,
            'max_contraction': self.max_iii,
            'max_sym_contraction': self.max_iv,
            'normality': self.normality,
            'threshold': self.threshold,
        }
        for name, value in self.cond_iii.items():
            row[name] = value
        for name, value in self.cond_iv.items():
            row['sym_' + name] = value
        return row


def gaussian_limit_sequence(dims: Sequence[int]) -> List[Kernel]:
    """f_d = d^{-1/2} sum_k e_k (x) ebar_k: E|F|^2 = 1 and gap 6/d."""
    return [identity_kernel(d, 1.0 / math.sqrt(d)) for d in dims]


def _sample_values(f: Kernel, samples: int, seed) -> np.ndarray:
    return np.concatenate([eval_integral_batch(f, block)
                           for block in seeded_chunks(seed, samples, f.d)])


def fmt_row(f: Kernel, index: int, samples: int, seed: int) -> FMTRow:
    aux = aux_kernels(f)
    sigma2 = math.factorial(f.m) * math.factorial(f.n) * f.norm() ** 2
    top = aux.phi.get(aux.lp)
    second = top.scalar_value() if (f.m == f.n and top is not None) else 0j
    fourth = fourth_moment_kernel(f, aux)
    values = _sample_values(f, samples, (seed, index))
    distance, threshold = normality_distance(values, complex_cov(sigma2, second), (seed, index))
    return FMTRow(
        index=index,
        d=f.d,
        sigma2=sigma2,
        second=second,
        fourth_moment=fourth,
        fourth_target=abs(fourth - (abs(second) ** 2 + 2 * sigma2 ** 2)),
        gap=gap_via_psi(f, aux),
        variances=variance_formulas(f, aux),
        normality=distance,
        threshold=threshold,
        cond_iii=contraction_norms(f),
        cond_iv=contraction_norms(f, symmetrized=True),
    )


def fmt_diagnostic(kernels: Sequence[Kernel], samples: int, seed: int) -> List[FMTRow]:
    """One row per kernel: contraction norms, derivative variances, gap, normality distance."""
    if not kernels:
        raise DomainError("empty kernel sequence")
    rank = kernels[0].rank
    if any(f.rank != rank for f in kernels):
        raise ShapeError("all kernels of a sequence must share one type (m, n)")
    if sum(rank) < 2:
        raise DomainError(f"diagnostic needs m + n >= 2, got type {rank}")
    if samples < MIN_MC_SAMPLES:
        raise DomainError(f"need at least {MIN_MC_SAMPLES} samples, got {samples}")
    rows = []
    for k, f in enumerate(kernels):
        row = fmt_row(f, k, samples, seed)
        logger.debug("fmt k=%d d=%d gap=%.6g normality=%.4g (threshold %.4g)",
                     k, f.d, row.gap, row.normality, row.threshold)
        rows.append(row)
    return rows
