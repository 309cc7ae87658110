"""Complex Ornstein-Uhlenbeck process dZ = -gamma Z dt + sqrt(a) dzeta and its drift estimator.

gamma = lambda - i omega. The least-squares error admits the chaos form

    sqrt(T) (gamma_hat - gamma) = -a I_{1,1}(T^{-1/2} K) / ((1/T) int_0^T |Z_t|^2 dt)

with K[s; r] = exp(-conj(gamma) (t_s - t_{r+1})) for r < s and Z_0 = 0.
"""

import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy import integrate, signal

from ..chaos import eval_integral_batch
from ..errors import DomainError, EstimatorError
from ..tensor import Kernel
from ..utils import Seed, normality_distance, spawn_seeds, standard_complex
from .fbm import HURST_MAX, HURST_MIN, ComplexPath, simulate_cfbm
from .grid import GridSpec, check_hurst, gram_embed, toeplitz_row

logger = logging.getLogger(__name__)

# Largest grid on which I_{1,1} is evaluated through a dense kernel.
DENSE_EVAL_LIMIT = 1024


@dataclass(frozen=True)
class OUModel:
    lam: float
    omega: float = 0.0
    a: float = 1.0
    hurst: float = 0.5
    z0: complex = 0j

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError(f"lambda must be positive, got {self.lam}")
        if self.a < 0:
            raise DomainError(f"noise intensity must be non-negative, got {self.a}")
        check_hurst(self.hurst, HURST_MIN, HURST_MAX)

    @property
    def gamma(self) -> complex:
        return complex(self.lam, -self.omega)

    def stationary_second_moment(self) -> float:
        """E|Z_inf|^2 = a / (2 lambda) for H = 1/2."""
        return self.a / (2.0 * self.lam)


def _ar_solve(phi: complex, z0: complex, forcing: np.ndarray) -> np.ndarray:
    """Z_{k+1} = phi Z_k + forcing_k, returned with Z_0 prepended."""
    n = len(forcing)
    y = signal.lfilter([1.0], [1.0, -phi], forcing.astype(complex))
    powers = phi ** np.arange(1, n + 1)
    return np.concatenate([[complex(z0)], powers * z0 + y])


def drive_cou(model: OUModel, grid: GridSpec, increments: np.ndarray) -> np.ndarray:
    """Riemann-Stieltjes recursion Z_{k+1} = e^{-gamma dt} Z_k + sqrt(a) dzeta_k."""
    phi = cmath.exp(-model.gamma * grid.dt)
    return _ar_solve(phi, model.z0, math.sqrt(model.a) * np.asarray(increments, dtype=complex))


def simulate_cou(model: OUModel, grid: GridSpec, seed: Seed) -> ComplexPath:
    """OU path: exact Gaussian transitions for H = 1/2, fBm-driven recursion otherwise."""
    if model.hurst == 0.5:
        phi = cmath.exp(-model.gamma * grid.dt)
        lam = model.lam
        scale = math.sqrt(model.a * -math.expm1(-2.0 * lam * grid.dt) / (2.0 * lam))
        eps = standard_complex(np.random.default_rng(seed), grid.N)
        values = _ar_solve(phi, model.z0, scale * eps)
        return ComplexPath(grid, values, 'ou', model.hurst, None)
    noise = simulate_cfbm(grid, model.hurst, seed)
    values = drive_cou(model, grid, noise.increments)
    return ComplexPath(grid, values, 'ou', model.hurst, noise.xi)


def lse_estimate(path: ComplexPath) -> complex:
    """gamma_hat = -sum conj(Z_k) dZ_k / (sum |Z_k|^2 dt), Ito sums at H = 1/2."""
    if path.hurst != 0.5:
        raise DomainError("the Ito-sum estimator needs H = 1/2; use lse_divergence_estimate")
    z = path.values
    denom = float(np.sum(np.abs(z[:-1]) ** 2)) * path.grid.dt
    if denom == 0.0:
        raise EstimatorError("degenerate path: sum of |Z|^2 is zero")
    return complex(-np.sum(np.conj(z[:-1]) * np.diff(z)) / denom)


def ou_kernel(model: OUModel, grid: GridSpec) -> np.ndarray:
    """Grid kernel K[s, r] = exp(-conj(gamma)(t_s - t_{r+1})) for r < s, zero elsewhere."""
    s = np.arange(grid.N)
    lag = s[:, None] - s[None, :] - 1
    phibar = cmath.exp(-model.gamma.conjugate() * grid.dt)
    out = np.zeros((grid.N, grid.N), dtype=complex)
    mask = lag >= 0
    out[mask] = phibar ** lag[mask]
    return out


def _i11_dense(model: OUModel, grid: GridSpec, xi: np.ndarray) -> complex:
    embed = gram_embed(grid, model.hurst)
    coords = embed @ ou_kernel(model, grid) @ embed.T
    kernel = Kernel(grid.N, 1, 1, coords / math.sqrt(grid.T))
    return complex(eval_integral_batch(kernel, xi[None, :])[0])


def _i11_recursive(model: OUModel, grid: GridSpec, increments: np.ndarray) -> complex:
    """sum_s dzeta_s sum_{r<s} K dzetabar_r - sum_{r<s} K[s,r] G[s,r], in O(N)."""
    phibar = cmath.exp(-model.gamma.conjugate() * grid.dt)
    inner = signal.lfilter([0.0, 1.0], [1.0, -phibar], np.conj(increments))
    total = np.sum(increments * inner)
    if model.hurst != 0.5:
        g = toeplitz_row(grid, model.hurst)
        k = np.arange(1, grid.N)
        total -= np.sum((grid.N - k) * phibar ** (k - 1) * g[1:])
    return complex(total / math.sqrt(grid.T))


@dataclass
class I11Result:
    value: complex
    numerator: complex
    denominator: float
    route: str
    lse: Optional[complex] = None
    path: Optional[ComplexPath] = field(default=None, repr=False)


def i11_statistic(model: OUModel, grid: GridSpec, seed: Seed,
                  route: Optional[str] = None) -> I11Result:
    """sqrt(T)(gamma_hat - gamma) through its I_{1,1} representation.

    The path is driven by the same coordinates the integral is evaluated on.
    route is 'dense' (kernel through gram_embed) or 'recursive'; by default
    dense up to DENSE_EVAL_LIMIT steps.
    """
    if model.z0 != 0:
        raise DomainError("the I_{1,1} representation needs Z_0 = 0")
    route = route or ('dense' if grid.N <= DENSE_EVAL_LIMIT else 'recursive')
    if route not in ('dense', 'recursive'):
        raise DomainError(f"unknown route '{route}'")
    noise = simulate_cfbm(grid, model.hurst, seed)
    values = drive_cou(model, grid, noise.increments)
    path = ComplexPath(grid, values, 'ou', model.hurst, noise.xi)

    if route == 'dense':
        chaos = _i11_dense(model, grid, noise.xi)
    else:
        chaos = _i11_recursive(model, grid, noise.increments)
    numerator = -model.a * chaos
    denominator = float(integrate.trapezoid(np.abs(values) ** 2, grid.nodes)) / grid.T
    value = numerator / denominator if denominator > 0 else complex('nan')
    lse = None
    if model.hurst == 0.5 and denominator > 0:
        lse = math.sqrt(grid.T) * (lse_estimate(path) - model.gamma)
    logger.debug("i11_statistic: route=%s N=%d value=%r lse=%r", route, grid.N, value, lse)
    return I11Result(value, numerator, denominator, route, lse, path)


def lse_divergence_estimate(model: OUModel, grid: GridSpec, seed: Seed,
                            route: Optional[str] = None) -> complex:
    """gamma + i11 / sqrt(T): the estimator built on the divergence-integral numerator."""
    result = i11_statistic(model, grid, seed, route)
    if result.denominator == 0:
        raise EstimatorError("degenerate path: integral of |Z|^2 is zero")
    return model.gamma + result.value / math.sqrt(grid.T)


@dataclass
class OUExperiment:
    rows: List[Dict[str, float]]
    summary: Dict[str, float]


def _replica(model: OUModel, grid: GridSpec, seed) -> complex:
    if model.hurst == 0.5:
        return lse_estimate(simulate_cou(model, grid, seed))
    return lse_divergence_estimate(model, grid, seed, route='recursive')


def summarize_estimates(estimates: np.ndarray, gamma: complex, T: float, seed: Seed) -> Dict[str, float]:
    """Means, standard errors and normality of sqrt(T)(gamma_hat - gamma).

    'normality' compares the errors as they are with N(0, cov), so a bias
    shows up in it; 'normality_centered' first removes the sample mean.
    """
    est = np.asarray(estimates, dtype=complex)
    replicas = len(est)
    errors = math.sqrt(T) * (est - gamma)
    cov = np.cov(np.stack([errors.real, errors.imag]))
    distance, threshold = normality_distance(errors, cov, seed)
    centered, _ = normality_distance(errors - errors.mean(), cov, seed)
    return {
        'replicas': replicas,
        'gamma_re': gamma.real,
        'gamma_im': gamma.imag,
        'mean_re': float(est.real.mean()),
        'mean_im': float(est.imag.mean()),
        'se_re': float(est.real.std(ddof=1) / math.sqrt(replicas)),
        'se_im': float(est.imag.std(ddof=1) / math.sqrt(replicas)),
        'bias': float(abs(est.mean() - gamma)),
        'normality': distance,
        'normality_centered': centered,
        'threshold': threshold,
    }


def run_ou_experiment(model: OUModel, grid: GridSpec, replicas: int, seed: Seed,
                      workers: int = 1) -> OUExperiment:
    """Estimate gamma on independent replicas; replica k uses the k-th spawned seed."""
    if replicas < 2:
        raise DomainError("need at least 2 replicas")
    seeds = spawn_seeds(seed, replicas)
    if workers == 1:
        estimates = [_replica(model, grid, s) for s in seeds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            estimates = list(pool.map(lambda s: _replica(model, grid, s), seeds))

    root_t = math.sqrt(grid.T)
    rows = []
    for k, g in enumerate(estimates):
        err = root_t * (g - model.gamma)
        rows.append({
            'replica': k,
            'gamma_hat_re': g.real,
            'gamma_hat_im': g.imag,
            'sqrtT_error_re': err.real,
            'sqrtT_error_im': err.imag,
        })

    summary = summarize_estimates(np.array(estimates), model.gamma, grid.T, seed)
    logger.info("ou experiment: %d replicas, mean gamma_hat %.4f%+.4fi",
                replicas, summary['mean_re'], summary['mean_im'])
    return OUExperiment(rows, summary)
