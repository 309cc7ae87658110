"""Shared helpers: degree caps, seeded complex Gaussian streams, normality statistic."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import stats

from .errors import DegreeCapError, DomainError

logger = logging.getLogger(__name__)

# An int or a sequence of ints, as accepted by numpy.random.SeedSequence.
Seed = Union[int, Sequence[int]]

# Samples per chunk of a Monte Carlo stream. Fixed so that the partition of
# the stream, and therefore the summation order, never depends on workers.
MC_CHUNK = 16384
MIN_MC_SAMPLES = 1000

# Projection angles of the sliced energy distance.
SLICE_ANGLES = 16

# Contraction norms at or below this count as zero.
DEFAULT_INDEPENDENCE_TOL = 1e-12


def check_degree_cap(degree: int, cap: Optional[int]):
    """Raise DegreeCapError when degree exceeds cap (cap None disables)."""
    if cap is not None and degree > cap:
        raise DegreeCapError(degree, cap)


def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def standard_complex(rng: np.random.Generator, size) -> np.ndarray:
    """I.i.d. standard symmetric complex Gaussians, E|zeta|^2 = 1."""
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return (re + 1j * im) / math.sqrt(2.0)


def chunk_sizes(samples: int, chunk: int = MC_CHUNK) -> List[int]:
    full, rest = divmod(samples, chunk)
    sizes = [chunk] * full
    if rest:
        sizes.append(rest)
    return sizes


def seeded_chunks(seed: Seed, samples: int, d: int,
                  chunk: int = MC_CHUNK) -> Iterator[np.ndarray]:
    """Yield (size, d) blocks of standard complex Gaussians.

    Block k is drawn from the k-th child of SeedSequence(seed), so the
    stream is the same however the blocks are later scheduled.
    """
    sizes = chunk_sizes(samples, chunk)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    for size, child in zip(sizes, children):
        yield standard_complex(np.random.default_rng(child), (size, d))


def mc_reduce(fn: Callable[[np.ndarray], np.ndarray], seed: Seed, samples: int,
              d: int, workers: int = 1) -> Tuple[complex, float]:
    """Monte Carlo mean and standard error of fn over a seeded stream.

    Args:
        fn: maps a (size, d) block of samples to a length-size complex array
        seed: master seed
        samples: total sample count (>= MIN_MC_SAMPLES)
        d: dimension of each sample
        workers: thread count; results do not depend on it

    Returns:
        (mean, standard error) where SE = sqrt(E|X - mean|^2 / samples).
    """
    if samples < MIN_MC_SAMPLES:
        raise DomainError(f"need at least {MIN_MC_SAMPLES} samples, got {samples}")
    if workers < 1:
        raise DomainError("worker count must be >= 1")

    def partial(block):
        vals = np.asarray(fn(block), dtype=complex)
        return vals.sum(), float(np.sum(np.abs(vals) ** 2))

    blocks = seeded_chunks(seed, samples, d)
    if workers == 1:
        parts = [partial(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(partial, blocks))

    total = 0j
    total_sq = 0.0
    for s, sq in parts:
        total += s
        total_sq += sq
    mean = total / samples
    var = max(total_sq / samples - abs(mean) ** 2, 0.0)
    se = math.sqrt(var / (samples - 1))
    logger.debug("mc_reduce: %d samples in %d chunks, mean=%r se=%g",
                  samples, len(parts), mean, se)
    return mean, se


def gaussian_reference(cov: np.ndarray, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw (size, 2) samples from N(0, cov); cov may be singular."""
    w, v = np.linalg.eigh(np.asarray(cov, dtype=float))
    root = v * np.sqrt(np.clip(w, 0.0, None))
    return rng.standard_normal((size, 2)) @ root.T


def sliced_energy_distance(x: np.ndarray, y: np.ndarray, angles: int = SLICE_ANGLES) -> float:
    """Mean 1-D energy distance over evenly spaced projection directions."""
    thetas = np.pi * np.arange(angles) / angles
    dirs = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
    px = x @ dirs.T
    py = y @ dirs.T
    return float(np.mean([stats.energy_distance(px[:, k], py[:, k]) for k in range(angles)]))


def normality_distance(values: np.ndarray, cov: np.ndarray, seed: Seed) -> Tuple[float, float]:
    """Distance of complex samples (Re, Im) from N(0, cov) and its Gaussian baseline.

    Returns:
        (distance, threshold) where threshold is the same statistic between
        two independent reference samples of equal size.
    """
    rng = np.random.default_rng(seed)
    pts = np.stack([values.real, values.imag], axis=1)
    ref = gaussian_reference(cov, len(pts), rng)
    ref2 = gaussian_reference(cov, len(pts), rng)
    return sliced_energy_distance(pts, ref), sliced_energy_distance(ref2, ref)


def complex_cov(sigma2: float, second: complex) -> np.ndarray:
    """Covariance of (Re F, Im F) from E|F|^2 = sigma2 and E F^2 = c + ib."""
    c, b = second.real, second.imag
    return 0.5 * np.array([[sigma2 + c, b], [b, sigma2 - c]])


def spawn_seeds(seed: Seed, count: int) -> Sequence[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(count)
