import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chaoskit.chaos import (ChaosExpansion, OUParams, abs_moment_exact, divergence, divergence_bar,
                            eval_expansion, eval_integral, eval_integral_batch, expansion_to_poly,
                            hu_meyer_forward, hu_meyer_inverse, hypercontractivity_margin,
                            independence_test, kernel_to_poly, malliavin_D, malliavin_Dbar,
                            mehler_estimate, ou_L, ou_Lbar, ou_semigroup, product_pair,
                            sample_isonormal, stratonovich_eval, stratonovich_poly,
                            stroock_expand, wick_monomial_check, wick_ratio)
from chaoskit.errors import DomainError, SymmetryError
from chaoskit.polyfun import exact, expect_product, random_poly, to_complex
from chaoskit.tensor import Kernel, inner, random_kernel

types = st.tuples(st.integers(0, 2), st.integers(0, 2))


def _expansion(rng, d, levels):
    return ChaosExpansion.from_kernels((random_kernel(rng, d, m, n) for m, n in levels), d)


def test_basis_integral(e11):
    zeta = np.array([0.3 - 1.2j])
    assert eval_integral(e11, zeta) == pytest.approx(abs(zeta[0]) ** 2 - 1)
    assert stratonovich_eval(e11, zeta[None, :])[0] == pytest.approx(abs(zeta[0]) ** 2)


def test_unsymmetric_kernel_rejected():
    with pytest.raises(SymmetryError):
        eval_integral(Kernel.basis(2, [0, 1], []), np.zeros(2))


def test_pointwise_and_batch_evaluation_agree(rng, kernel_factory):
    f = kernel_factory(2, 2, 1)
    zeta = sample_isonormal(rng, 2, 5)
    batch = eval_integral_batch(f, zeta)
    for k in range(5):
        assert batch[k] == pytest.approx(eval_integral(f, zeta[k]), rel=1e-10, abs=1e-10)


@settings(max_examples=20, deadline=None)
@given(types, types, st.integers(0, 2 ** 32 - 1))
def test_isometry_against_exact_oracle(fa, ga, seed):
    rng = np.random.default_rng(seed)
    f = random_kernel(rng, 2, *fa)
    g = random_kernel(rng, 2, *ga)
    got = to_complex(expect_product(kernel_to_poly(f), kernel_to_poly(g).conj()))
    if fa == ga:
        m, n = fa
        want = math.factorial(m) * math.factorial(n) * inner(f, g)
    else:
        want = 0.0
    assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


def test_product_of_e11_with_itself(e11):
    F = product_pair(e11, e11)
    assert F.support() == [(0, 0), (1, 1), (2, 2)]
    assert F.mean == pytest.approx(1.0)
    assert F.project(1, 1).coeffs[0, 0] == pytest.approx(2.0)
    assert F.project(2, 2).coeffs[0, 0, 0, 0] == pytest.approx(1.0)


@settings(max_examples=15, deadline=None)
@given(types, types, st.integers(0, 2 ** 32 - 1))
def test_product_formula_against_exact_oracle(fa, ga, seed):
    rng = np.random.default_rng(seed)
    f = random_kernel(rng, 2, *fa)
    g = random_kernel(rng, 2, *ga)
    lhs = expansion_to_poly(product_pair(f, g))
    rhs = kernel_to_poly(f) * kernel_to_poly(g)
    assert lhs.max_abs_diff(rhs) <= 1e-9


def test_stroock_recovers_kernel(kernel_factory):
    f = kernel_factory(2, 2, 1)
    F = stroock_expand(kernel_to_poly(f))
    assert F.support() == [(2, 1)]
    assert F.project(2, 1).allclose(f, 1e-10)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_stroock_round_trip_on_polynomials(seed):
    p = random_poly(np.random.default_rng(seed), 2, 4)
    assert expansion_to_poly(stroock_expand(p)).max_abs_diff(p) <= 1e-10


def test_hu_meyer_forward_matches_stratonovich(rng, kernel_factory):
    f = kernel_factory(2, 2, 2)
    zeta = sample_isonormal(rng, 2, 8)
    np.testing.assert_allclose(eval_expansion(hu_meyer_forward(f), zeta),
                               stratonovich_eval(f, zeta), rtol=1e-10, atol=1e-10)


def test_hu_meyer_inverse_round_trip(rng, kernel_factory):
    f = kernel_factory(3, 2, 1)
    strat = hu_meyer_inverse(f)
    assert strat.to_chaos().is_close(ChaosExpansion.from_kernel(f), 1e-12)
    zeta = sample_isonormal(rng, 3, 8)
    np.testing.assert_allclose(strat.evaluate(zeta), eval_integral_batch(f, zeta),
                               rtol=1e-10, atol=1e-10)


def test_stratonovich_partial_sums(kernel_factory):
    f = kernel_factory(3, 1, 1)
    full = stratonovich_poly(f)
    assert stratonovich_poly(f, 3) == full
    assert stratonovich_poly(f, 0).is_zero()
    with pytest.raises(DomainError):
        stratonovich_poly(f, 4)


def test_number_operator_is_divergence_of_derivative(rng):
    F = _expansion(rng, 2, [(0, 0), (1, 0), (1, 1), (2, 1), (0, 2)])
    assert divergence(malliavin_D(F)).is_close(ou_L(F), 1e-12)
    assert divergence_bar(malliavin_Dbar(F)).is_close(ou_Lbar(F), 1e-12)


def test_derivative_of_first_chaos():
    v = np.array([1.0, 2.0j])
    F = ChaosExpansion.from_kernel(Kernel.vector(v))
    D = malliavin_D(F)
    assert [G.mean for G in D] == [pytest.approx(1.0), pytest.approx(2.0j)]
    assert all(G.support() == [] for G in malliavin_Dbar(F))


def test_semigroup_law(rng):
    F = _expansion(rng, 2, [(1, 0), (1, 1), (2, 1)])
    s, t = OUParams(0.4, 0.3), OUParams(0.4, 0.5)
    twice = ou_semigroup(ou_semigroup(F, s), t)
    assert twice.is_close(ou_semigroup(F, s.compose(t)), 1e-12)
    assert ou_semigroup(F, OUParams(0.4, 0.0)).is_close(F, 0.0)


def test_semigroup_parameter_validation():
    with pytest.raises(DomainError):
        OUParams(math.pi / 2, 1.0)
    with pytest.raises(DomainError):
        OUParams(0.0, -1.0)
    with pytest.raises(DomainError):
        OUParams(0.1, 1.0).compose(OUParams(0.2, 1.0))


def test_mehler_estimate_at_time_zero(e11):
    p = kernel_to_poly(e11)
    zeta = np.array([0.5 + 0.5j])
    mean, _ = mehler_estimate(p, OUParams(0.0, 0.0), zeta, 2000, seed=1)
    assert mean == pytest.approx(p.eval_at(zeta), abs=1e-12)


def test_mehler_estimate_matches_semigroup(e11):
    params = OUParams(0.3, 0.7)
    zeta = np.array([1.0 - 0.5j])
    mean, se = mehler_estimate(kernel_to_poly(e11), params, zeta, 50000, seed=11)
    want = eval_expansion(ou_semigroup(ChaosExpansion.from_kernel(e11), params), zeta)[0]
    assert abs(mean - want) <= 5 * se + 1e-12


def test_absolute_moments(e11):
    assert abs_moment_exact(e11, 2) == exact(1)
    assert abs_moment_exact(e11, 4) == exact(9)
    with pytest.raises(DomainError):
        abs_moment_exact(e11, 3)


def test_hypercontractivity_margin_first_chaos():
    e1 = Kernel.vector([1.0])
    assert hypercontractivity_margin(e1, 4) == pytest.approx(math.sqrt(3) - 2 ** 0.25)
    assert hypercontractivity_margin(e1, 2) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("p,q", [(1, 0), (1, 1), (2, 1), (3, 2)])
def test_wick_monomials(p, q):
    assert wick_monomial_check(p, q, [1.0, 0.5j]).passed


def test_wick_ratio_of_zero_is_nan(e11):
    assert math.isnan(wick_ratio(ChaosExpansion.zero(1), ChaosExpansion.from_kernel(e11)))


def test_independence_of_orthogonal_first_chaoses():
    e1, e2 = Kernel.vector([1.0, 0.0]), Kernel.vector([0.0, 1.0])
    report = independence_test(e1, e2)
    assert report.independent
    assert len(report.skipped) == 3
    assert not independence_test(e1, e1).independent
