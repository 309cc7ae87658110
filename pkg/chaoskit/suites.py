"""Verification suites run by `chaoskit verify`.

Every suite compares a library routine against an independent route (the
exact polynomial oracle, quadrature, or a second formula) over a seeded set
of cases, and returns a SuiteResult. Only the case list depends on the
seed; worker count changes scheduling, never results.
"""

import cmath
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List

import numpy as np

from . import chaos, hermite, moments, polyfun, process
from .chaos import ChaosExpansion
from .config import RunConfig
from .hermite import RHO, Z, ZBAR
from .polyfun import expect_gaussian, expect_product, random_poly, to_complex
from .tensor import Kernel, inner, random_kernel
from .utils import standard_complex

logger = logging.getLogger(__name__)

# Mehler Monte Carlo is accepted within this many standard errors.
MEHLER_SE_BAND = 4.0

# Largest total rank a+b+c+dd of a kernel pair in the product suite.
PRODUCT_MAX_RANK = 6

# Drift-estimator consistency: (Hurst index, grid step) pairs and horizons.
ESTIMATOR_GRIDS = ((0.5, 0.01), (0.6, 0.1))
ESTIMATOR_HORIZONS = (50.0, 100.0, 200.0)
ESTIMATOR_REPLICAS = 200
ESTIMATOR_SE_BAND = 3.0
# The least-squares bias is O(1/T); the band is widened by this many units of 1/T.
ESTIMATOR_BIAS_ALLOWANCE = 3.0


@dataclass
class SuiteResult:
    suite: str
    cases: int = 0
    max_error: float = 0.0
    failures: List[str] = field(default_factory=list)
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, label: str, error: float, tol: float):
        """Record one case; NaN counts as a failure."""
        self.cases += 1
        error = float(error)
        if math.isnan(error) or error > tol:
            self.failures.append(f"{label}: error {error:.3e} > {tol:.1e}")
        if not math.isnan(error):
            self.max_error = max(self.max_error, error)

    def check_bound(self, label: str, value: float, bound: float):
        """Record a statistical case: pass when value <= bound. Not part of max_error."""
        self.cases += 1
        if not value <= bound:
            self.failures.append(f"{label}: {value:.4g} exceeds {bound:.4g}")

    def require(self, label: str, condition: bool):
        self.cases += 1
        if not condition:
            self.failures.append(label)

    def to_report(self) -> Dict[str, object]:
        return {
            'suite': self.suite,
            'cases': self.cases,
            'failures': list(self.failures),
            'max_error': self.max_error,
            'passed': self.passed,
            'notes': self.notes,
        }


def _count(config: RunConfig, default: int) -> int:
    return config.cases or default


def _rank_types(max_order: int, min_order: int = 0):
    return [(m, n) for m in range(max_order + 1) for n in range(max_order + 1 - m)
            if m + n >= min_order]


def _random_expansion(rng: np.random.Generator, d: int, max_order: int) -> ChaosExpansion:
    kernels = [random_kernel(rng, d, m, n) for m, n in _rank_types(max_order)
               if rng.random() < 0.6]
    return ChaosExpansion.from_kernels(kernels, d)


# Suites

def suite_hermite(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Rodrigues form, recursions, derivatives, eigen-operator, generating function, orthogonality."""
    res = SuiteResult('hermite')
    top = min(_count(config, 8), config.degree_cap)
    for m, n in itertools.product(range(top + 1), repeat=2):
        j = hermite.poly_J(m, n, cap=config.degree_cap).poly
        res.require(f"rodrigues ({m},{n})", hermite.rodrigues_poly(m, n) == j)
        if m:
            res.require(f"d_z ({m},{n})", j.d_z() == hermite.poly_J(m - 1, n).poly * m)
        if n:
            res.require(f"d_zbar ({m},{n})", j.d_zbar() == hermite.poly_J(m, n - 1).poly * n)
        if m and n:
            res.require(f"d_rho ({m},{n})", j.d_rho() == hermite.poly_J(m - 1, n - 1).poly * (-m * n))
        else:
            res.require(f"d_rho ({m},{n})", not j.d_rho())
        step = Z * j
        if n:
            step = step - hermite.poly_J(m, n - 1).poly * RHO * n
        res.require(f"recursion ({m},{n})", hermite.poly_J(m + 1, n, cap=None).poly == step)
        conj_step = ZBAR * j
        if m:
            conj_step = conj_step - hermite.poly_J(m - 1, n).poly * RHO * m
        res.require(f"conjugate recursion ({m},{n})", hermite.poly_J(m, n + 1, cap=None).poly == conj_step)
        a_part, b_part = hermite.eigen_operator(j)
        res.require(f"eigen ({m},{n})", a_part == j * (m + n) and b_part == j * (m - n))

    tol = config.tolerance('hermite')
    for m, n in itertools.product(range(top + 1), repeat=2):
        z = complex(*rng.standard_normal(2))
        rho = float(rng.uniform(0.5, 2.0))
        for c in (math.sqrt(2.0), 0.5, 3.0):
            want = c ** (m + n) * hermite.eval_J(m, n, z, rho)
            got = hermite.eval_J(m, n, c * z, c * c * rho)
            res.check(f"scaling ({m},{n}) c={c:.3g}", abs(got - want) / max(1.0, abs(want)), 1e2 * tol)
    for radius, angle, zr, rho in itertools.product((0.3, 0.6), (0.0, 1.3), (0.5, 2.0), (1.0, 2.0)):
        lam = cmath.rect(radius, angle)
        z = cmath.rect(zr, 0.7)
        closed = cmath.exp(lam.conjugate() * z + lam * z.conjugate() - rho * abs(lam) ** 2)
        approx = hermite.gf_partial_sum(lam, z, rho, 25, 25)
        res.check(f"generating function lam={lam:.2f} z={z:.2f} rho={rho}",
                  abs(approx - closed), tol)

    for (m, n), (p, q) in itertools.product(_rank_types(3), repeat=2):
        got = hermite.gaussian_inner(m, n, p, q, 1.0)
        want = math.factorial(m) * math.factorial(n) if (m, n) == (p, q) else 0.0
        res.check(f"orthogonality ({m},{n})x({p},{q})", abs(got - want), 1e3 * tol)

    _conversion_checks(res, rng, 10 * tol)
    return res


def _conversion_checks(res: SuiteResult, rng: np.random.Generator, tol: float, points: int = 20):
    """Real/complex Hermite conversions as pointwise identities in (x, y), degrees <= 6."""
    xy = rng.standard_normal((points, 2))
    x, y = xy[:, 0], xy[:, 1]
    z = x + 1j * y
    for l in range(7):
        thetas = hermite.default_thetas(l)
        j = np.array([[hermite.eval_J(m, l - m, w, 2.0) for w in z] for m in range(l + 1)])
        prods = np.array([hermite.eval_H(k, x) * hermite.eval_H(l - k, y) for k in range(l + 1)])
        directional = np.array([hermite.eval_H(l, x * math.cos(t) + y * math.sin(t)) for t in thetas])
        scale = max(1.0, float(np.max(np.abs(j))), float(np.max(np.abs(prods))))

        for m in range(l + 1):
            table = hermite.complex_from_real(l, m)
            got = sum(c * prods[k] for k, c in table.items())
            res.check(f"J from H products l={l} m={m}", np.max(np.abs(got - j[m])) / scale, tol)
        for k in range(l + 1):
            table = hermite.real_from_complex(k, l)
            got = sum(c * j[m] for m, c in table.items())
            res.check(f"H products from J l={l} k={k}", np.max(np.abs(got - prods[k])) / scale, tol)
            row = hermite.hermite_pair_rep(l, k, thetas)
            res.check(f"H products from directions l={l} k={k}",
                      np.max(np.abs(row @ directional - prods[k])) / scale, tol)

        to_directional = hermite.complex_to_directional(l, thetas).matrix
        res.check(f"J from directions l={l}", np.max(np.abs(to_directional @ directional - j)) / scale, tol)
        to_complex = hermite.directional_to_complex(l, thetas).matrix
        res.check(f"direction round trip l={l}",
                  np.max(np.abs(to_directional @ to_complex - np.eye(l + 1))), tol)

        phi = float(rng.uniform(0.0, math.pi))
        f, g = math.cos(phi), math.sin(phi)
        lhs = hermite.eval_H(l, f * x + g * y)
        for theta in (0.0, math.pi / 5):
            d = hermite.directional_to_complex(l, theta).matrix[0]
            w = hermite.rotated_argument(f, g, theta, x, y)
            rhs = sum(d[k] * np.array([hermite.eval_J(k, l - k, p, 2.0) for p in w]) for k in range(l + 1))
            res.check(f"direction to J l={l} theta={theta:.3f}",
                      np.max(np.abs(rhs - lhs)) / max(1.0, float(np.max(np.abs(lhs)))), tol)


def suite_isometry(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    res = SuiteResult('isometry')
    tol = config.tolerance('isometry')
    types = _rank_types(3)
    for case in range(_count(config, 30)):
        d = int(rng.integers(1, 4))
        (m, n), (p, q) = types[rng.integers(len(types))], types[rng.integers(len(types))]
        if case % 3 == 0:
            p, q = m, n
        f, g = random_kernel(rng, d, m, n), random_kernel(rng, d, p, q)
        oracle = to_complex(expect_product(chaos.kernel_to_poly(f), chaos.kernel_to_poly(g).conj()))
        want = math.factorial(m) * math.factorial(n) * inner(f, g) if (m, n) == (p, q) else 0j
        res.check(f"case {case} ({m},{n})x({p},{q}) d={d}", abs(oracle - want), tol * max(1.0, abs(want)))
    return res


def suite_product(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    res = SuiteResult('product')
    tol = config.tolerance('product')
    per_type = _count(config, 30)
    pairs = [(f, g) for f, g in itertools.product(_rank_types(PRODUCT_MAX_RANK), repeat=2)
             if sum(f) + sum(g) <= PRODUCT_MAX_RANK]
    for (a, b), (c, dd) in pairs:
        for case in range(per_type):
            d = int(rng.integers(1, 4))
            f, g = random_kernel(rng, d, a, b), random_kernel(rng, d, c, dd)
            formula = chaos.expansion_to_poly(chaos.product_pair(f, g))
            oracle = chaos.kernel_to_poly(f) * chaos.kernel_to_poly(g)
            res.check(f"({a},{b})x({c},{dd}) case {case}", formula.max_abs_diff(oracle), tol)
    return res


def suite_stroock(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    res = SuiteResult('stroock')
    tol = config.tolerance('stroock')
    for case in range(_count(config, 30)):
        F = _random_expansion(rng, int(rng.integers(1, 4)), 3)
        back = chaos.stroock_expand(chaos.expansion_to_poly(F))
        res.check(f"case {case} {F!r}", F.max_abs_diff(back), tol)
    return res


def suite_humeyer(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    res = SuiteResult('humeyer')
    tol = config.tolerance('humeyer')
    for case in range(_count(config, 20)):
        p, q = int(rng.integers(0, 4)), int(rng.integers(0, 4))
        f = random_kernel(rng, int(rng.integers(1, 4)), p, q)
        round_trip = chaos.hu_meyer_inverse(f).to_chaos()
        size = max(1.0, float(np.max(np.abs(f.coeffs))))
        res.check(f"round trip ({p},{q}) case {case}",
                  round_trip.max_abs_diff(ChaosExpansion.from_kernel(f)) / size, 1e2 * tol)
        points = standard_complex(rng, (20, f.d))
        pathwise = chaos.stratonovich_eval(f, points)
        spectral = chaos.eval_expansion(chaos.hu_meyer_forward(f), points)
        scale = max(1.0, float(np.max(np.abs(pathwise))))
        res.check(f"forward ({p},{q}) case {case}", float(np.max(np.abs(pathwise - spectral))) / scale,
                  1e3 * tol)

    zeta = standard_complex(rng, 100)
    s11 = chaos.stratonovich_eval(Kernel.basis(1, [0], [0]), zeta[:, None])
    res.check("S_{1,1}(e1 x e1bar) = |zeta|^2", float(np.max(np.abs(s11 - np.abs(zeta) ** 2))), tol)
    return res


def _mehler_fixtures(rng: np.random.Generator):
    yield 'J_{1,0}', ChaosExpansion.from_kernel(Kernel.vector([1.0]))
    yield 'J_{1,1}', ChaosExpansion.from_kernel(Kernel.basis(1, [0], [0]))
    yield 'J_{2,1}', ChaosExpansion.from_kernel(Kernel.basis(1, [0, 0], [0]))
    yield 'random d=2 order<=2', _random_expansion(rng, 2, 2)
    yield 'random d=3 order<=2', _random_expansion(rng, 3, 2)


def suite_ou(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """L = delta D, semigroup law, Mehler against the spectral action, hypercontractivity."""
    res = SuiteResult('ou')
    tol = config.tolerance('ou')
    for case in range(_count(config, 20)):
        F = _random_expansion(rng, int(rng.integers(1, 4)), 3)
        res.check(f"L = delta D case {case}",
                  chaos.ou_L(F).max_abs_diff(chaos.divergence(chaos.malliavin_D(F))), 1e2 * tol)
        res.check(f"Lbar = deltabar Dbar case {case}",
                  chaos.ou_Lbar(F).max_abs_diff(chaos.divergence_bar(chaos.malliavin_Dbar(F))), 1e2 * tol)
        theta = float(rng.uniform(-1.4, 1.4))
        s, t = float(rng.uniform(0, 2)), float(rng.uniform(0, 2))
        twice = chaos.ou_semigroup(chaos.ou_semigroup(F, chaos.OUParams(theta, s)), chaos.OUParams(theta, t))
        once = chaos.ou_semigroup(F, chaos.OUParams(theta, s + t))
        res.check(f"semigroup law case {case}", twice.max_abs_diff(once), tol)

    params = chaos.OUParams(0.6, 0.4)
    for k, (label, F) in enumerate(_mehler_fixtures(rng)):
        zeta = standard_complex(rng, F.d)
        estimate, se = chaos.mehler_estimate(chaos.expansion_to_poly(F), params, zeta,
                                             config.samples, (config.seed, k), config.workers)
        spectral = complex(chaos.eval_expansion(chaos.ou_semigroup(F, params), zeta[None, :])[0])
        res.check_bound(f"mehler {label}", abs(estimate - spectral), MEHLER_SE_BAND * se + 1e-12)

    e1 = Kernel.vector([1.0])
    e11 = Kernel.basis(1, [0], [0])
    exact_margins = {
        ('e1', 4): math.sqrt(3) - 2 ** 0.25,
        ('e1 x e1bar', 4): 3 - 9 ** 0.25,
    }
    for (label, r), want in exact_margins.items():
        f = e1 if label == 'e1' else e11
        res.check(f"margin {label} r={r}", abs(chaos.hypercontractivity_margin(f, r) - want), 1e-12)
    for r in (4, 6):
        for k, f in enumerate([e1, e11, random_kernel(rng, 2, 1, 1), random_kernel(rng, 2, 2, 0)]):
            margin = chaos.hypercontractivity_margin(f, r)
            res.require(f"margin >= 0 fixture {k} r={r} ({margin:.3g})", margin >= -1e-12)
    return res


def suite_wick(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    res = SuiteResult('wick')
    tol = config.tolerance('wick')
    for p, q in itertools.product(range(4), repeat=2):
        vec = (rng.standard_normal(2) + 1j * rng.standard_normal(2)) / 2
        report = chaos.wick_monomial_check(p, q, vec, cap=config.degree_cap, tol=tol)
        res.check(f"wick monomial ({p},{q})", report.max_abs_diff, tol)

    ratios = []
    for case in range(_count(config, 10)):
        F = _random_expansion(rng, 2, 2)
        G = _random_expansion(rng, 2, 2)
        top = chaos.wick_expansion(F, G)
        lhs = chaos.expansion_to_poly(top)
        # The Wick product keeps only the top level of every kernel pair.
        rhs = polyfun.WickPoly.zero(2)
        for f in F.levels.values():
            for g in G.levels.values():
                rhs = rhs + chaos.kernel_to_poly(chaos.product_pair(f, g).project(f.m + g.m, f.n + g.n))
        res.check(f"wick top level case {case}", lhs.max_abs_diff(rhs), tol)
        ratio = chaos.wick_ratio(F, G)
        if not math.isnan(ratio):
            ratios.append(ratio)
    res.notes['wick_ratio_max'] = max(ratios, default=float('nan'))
    return res


def suite_independence(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Disjoint supports are independent (and E|F|^2|G|^2 factorizes); shared supports are not."""
    res = SuiteResult('independence')
    tol = config.tolerance('independence')
    for case in range(_count(config, 10)):
        m, n = _rank_types(2, 1)[rng.integers(5)]
        p, q = _rank_types(2, 1)[rng.integers(5)]
        f = _embed(random_kernel(rng, 1, m, n), 2, 0)
        g = _embed(random_kernel(rng, 1, p, q), 2, 1)
        report = chaos.independence_test(f, g)
        res.require(f"disjoint case {case} independent", report.independent)
        pf, pg = chaos.kernel_to_poly(f), chaos.kernel_to_poly(g)
        joint = expect_product(pf * pf.conj(), pg * pg.conj())
        split = expect_gaussian(pf * pf.conj()) * expect_gaussian(pg * pg.conj())
        res.check(f"disjoint case {case} factorization", abs(to_complex(joint - split)), tol)

        h = random_kernel(rng, 2, m, n)
        res.require(f"shared case {case} dependent", not chaos.independence_test(h, h).independent)
    return res


def _embed(f: Kernel, d: int, coordinate: int) -> Kernel:
    """Place a d=1 kernel on basis vector `coordinate` of C^d."""
    idx = (coordinate,) * f.order
    return Kernel.basis(d, idx[:f.m], idx[f.m:], f.coeffs[(0,) * f.order])


def suite_moments(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    res = SuiteResult('moments')
    tol = config.tolerance('moments')
    types = [(1, 1), (2, 1), (2, 2), (3, 1)]
    per_type = _count(config, 30)
    ratios = []
    for (m, n), case in itertools.product(types, range(per_type)):
        f = random_kernel(rng, int(rng.integers(1, 4)), m, n)
        routes = moments.fm_gap_routes(f)
        res.check(f"gap routes ({m},{n}) case {case}", routes.max_rel_error(), tol)
        formula, oracle = moments.variance_formulas(f), moments.variance_oracle(f)
        if routes.psi > tol:
            ratios.append(max(formula) / routes.psi)
        for name, a, b in zip(formula._fields, formula, oracle):
            res.check(f"variance {name} ({m},{n}) case {case}", abs(a - b) / max(1.0, abs(b)), tol)
        sandwich = moments.fmt_sandwich(f, tol)
        res.require(f"sandwich ({m},{n}) case {case}",
                    sandwich.nonnegative and sandwich.ordered and sandwich.consistent)
        if case < 3:
            fourth = float(polyfun.real_fraction(moments.fourth_moment_via_derivatives(f)))
            kern = moments.fourth_moment_kernel(f)
            res.check(f"fourth moment via D ({m},{n}) case {case}", abs(fourth - kern) / max(1.0, kern), tol)

    e11 = Kernel.basis(1, [0], [0])
    res.check("gap(e1 x e1bar) = 6", abs(moments.fm_gap(e11) - 6.0), tol)
    res.check("Var ||DF||^2 = 1", abs(moments.variance_formulas(e11).d_norm - 1.0), tol)
    ones = Kernel(1, 2, 1, np.ones((1, 1, 1)))
    res.check("gap(ones (2,1)) = 168", abs(moments.fm_gap(ones) - 168.0) / 168.0, tol)
    # Reported only; no inequality between the variances and the gap is asserted.
    res.notes['variance_gap_ratio_max'] = max(ratios, default=float('nan'))
    return res


def suite_clark_ocone(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    res = SuiteResult('clark-ocone')
    tol = config.tolerance('clark-ocone')
    grid = process.GridSpec(4.0, 4)
    square = process.clark_ocone_decompose(process.terminal_square(grid), grid, seed=config.seed)
    res.check("|Z_T|^2", square.residual, tol)
    res.check("increment dZ_1", process.clark_ocone_residual(process.increment_poly(grid, 0), grid,
                                                             seed=config.seed), tol)
    for case in range(_count(config, 20)):
        p = random_poly(rng, grid.N, 3)
        report = process.clark_ocone_decompose(p, grid, seed=(config.seed, case))
        res.check(f"random polynomial {case}", report.residual, tol)
        res.require(f"random polynomial {case} consistent", report.consistent)
    return res


def suite_fmt(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Trend of the diagnostic along f_d = d^{-1/2} sum e_k (x) ebar_k."""
    res = SuiteResult('fmt')
    tol = config.tolerance('fmt')
    dims = [1, 2, 4, 8, 16]
    rows = moments.fmt_diagnostic(moments.gaussian_limit_sequence(dims), config.samples, config.seed)
    for prev, cur in zip(rows, rows[1:]):
        res.require(f"contraction norms decay d={prev.d}->{cur.d}",
                    cur.max_iii <= prev.max_iii + tol and cur.max_iv <= prev.max_iv + tol)
        res.require(f"gap decays d={prev.d}->{cur.d}", cur.gap <= prev.gap + tol)
    for row in rows:
        res.check(f"gap d={row.d} = 6/d", abs(row.gap - 6.0 / row.d), tol)
    res.require("gap(16) <= gap(1)/8", rows[-1].gap <= rows[0].gap / 8 + tol)
    for prev, cur in zip(rows, rows[1:]):
        res.check_bound(f"normality decays d={prev.d}->{cur.d}", cur.normality, prev.normality + prev.threshold)
    res.notes['normality'] = [round(r.normality, 6) for r in rows]
    res.notes['threshold'] = [round(r.threshold, 6) for r in rows]
    return res


def suite_estimator(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Drift estimator consistency over horizons, plus the H = 0.6 route and embedding checks.

    gamma = 1 - 0.5i, a = 1. Each horizon gets its own replica batch. The
    mean estimate must sit within ESTIMATOR_SE_BAND standard errors of gamma,
    widened by ESTIMATOR_BIAS_ALLOWANCE / T for the finite-horizon bias, and
    |mean - gamma| must not grow with T beyond two combined standard errors.
    """
    res = SuiteResult('estimator')
    tol = config.tolerance('estimator')
    replicas = max(2, _count(config, ESTIMATOR_REPLICAS))
    for h_index, (hurst, dt) in enumerate(ESTIMATOR_GRIDS):
        model = process.OUModel(1.0, omega=0.5, a=1.0, hurst=hurst)
        summaries = []
        for t_index, T in enumerate(ESTIMATOR_HORIZONS):
            grid = process.GridSpec(T, int(round(T / dt)))
            experiment = process.run_ou_experiment(model, grid, replicas, [config.seed, h_index, t_index],
                                                   config.workers)
            summary = experiment.summary
            summaries.append(summary)
            for part in ('re', 'im'):
                off = abs(summary[f'mean_{part}'] - summary[f'gamma_{part}'])
                band = ESTIMATOR_SE_BAND * summary[f'se_{part}'] + ESTIMATOR_BIAS_ALLOWANCE / T
                res.check_bound(f"H={hurst:g} T={T:g} mean {part} near gamma", off, band)

        for (t_prev, prev), (t_cur, cur) in zip(zip(ESTIMATOR_HORIZONS, summaries),
                                                zip(ESTIMATOR_HORIZONS[1:], summaries[1:])):
            slack = 2.0 * math.hypot(math.hypot(prev['se_re'], prev['se_im']),
                                     math.hypot(cur['se_re'], cur['se_im']))
            res.check_bound(f"H={hurst:g} bias T={t_prev:g}->{t_cur:g}", cur['bias'], prev['bias'] + slack)
        if hurst == 0.5:
            res.require(f"H=0.5 bias at T={ESTIMATOR_HORIZONS[-1]:g} below T={ESTIMATOR_HORIZONS[0]:g}",
                        summaries[-1]['bias'] < summaries[0]['bias'])
        res.notes[f'bias_H{hurst:g}'] = [round(s['bias'], 6) for s in summaries]

    model = process.OUModel(1.0, omega=0.5, hurst=0.6)
    grid = process.GridSpec(4.0, 64)
    for case in range(3):
        seed = [config.seed, len(ESTIMATOR_GRIDS), case]
        dense = process.i11_statistic(model, grid, seed, route='dense').value
        recursive = process.i11_statistic(model, grid, seed, route='recursive').value
        res.check(f"H=0.6 I11 routes case {case}", abs(dense - recursive) / max(1.0, abs(dense)), tol)
    embed = process.gram_embed(grid, 0.6)
    res.check("H=0.6 Gram embedding isometry",
              float(np.max(np.abs(embed.T @ embed - process.phi_gram(grid, 0.6)))), tol)
    return res


SUITES: Dict[str, Callable[[RunConfig, np.random.Generator], SuiteResult]] = {
    'hermite': suite_hermite,
    'isometry': suite_isometry,
    'product': suite_product,
    'stroock': suite_stroock,
    'humeyer': suite_humeyer,
    'ou': suite_ou,
    'wick': suite_wick,
    'independence': suite_independence,
    'moments': suite_moments,
    'clark-ocone': suite_clark_ocone,
    'fmt': suite_fmt,
    'estimator': suite_estimator,
}


def run_suite(name: str, config: RunConfig) -> SuiteResult:
    """Run one suite with the case generator seeded from (seed, suite position)."""
    rng = np.random.default_rng([config.seed, list(SUITES).index(name)])
    result = SUITES[name](config, rng)
    logger.debug("suite %s: %d cases, max error %.3e, %d failures",
                 name, result.cases, result.max_error, len(result.failures))
    return result
