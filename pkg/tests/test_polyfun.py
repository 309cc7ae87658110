from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chaoskit.errors import DomainError, ShapeError
from chaoskit.polyfun import (WickPoly, compose, coordinate_polys, exact, expect_abs2,
                              expect_gaussian, expect_partial, expect_product, mc_expectation,
                              random_poly, real_fraction, to_complex)


def test_exact_lift_of_float():
    c = exact(0.1)
    assert real_fraction(c) == Fraction(0.1)
    assert to_complex(exact(1.5 - 2j)) == 1.5 - 2j


def test_text_form():
    z1, z2 = coordinate_polys(2)
    p = z1 * z2.conj() - 2
    assert p.to_text() == "z1*zb2 - 2"
    assert WickPoly.zero(2).to_text() == "0"


def test_wirtinger_derivatives():
    z, = coordinate_polys(1)
    p = z ** 2 * z.conj() ** 3
    assert p.d_z(0) == (z * z.conj() ** 3) * 2
    assert p.d_zbar(0) == (z ** 2 * z.conj() ** 2) * 3
    with pytest.raises(ShapeError):
        p.d_z(1)


@pytest.mark.parametrize("a,b,expected", [(0, 0, 1), (1, 0, 0), (1, 1, 1), (2, 2, 2), (3, 3, 6), (2, 1, 0)])
def test_isserlis_single_coordinate(a, b, expected):
    assert expect_gaussian(WickPoly.monomial(1, [a], [b])) == exact(expected)


def test_moments_factor_across_coordinates():
    p = WickPoly.monomial(2, [2, 1], [2, 1])
    assert expect_gaussian(p) == exact(2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_expect_product_matches_product(seed):
    rng = np.random.default_rng(seed)
    p, q = random_poly(rng, 2, 3), random_poly(rng, 2, 3)
    assert expect_product(p, q) == expect_gaussian(p * q)


def test_expect_abs2():
    z1, z2 = coordinate_polys(2)
    p = z1 + z2 * 2
    assert expect_abs2(p) == exact(5)


def test_partial_expectation():
    z1, z2 = coordinate_polys(2)
    p = z1 * z1.conj() * z2 + z2 * z2.conj()
    assert expect_partial(p, [0]) == z2 + z2 * z2.conj()
    assert expect_partial(p, [1]) == WickPoly.const(2, 1)
    assert expect_gaussian(expect_partial(p, [0])) == expect_gaussian(p)
    with pytest.raises(DomainError):
        expect_partial(p, [2])


def test_compose_substitutes_conjugates():
    w, = coordinate_polys(1)
    phi = w * w.conj()
    z1, z2 = coordinate_polys(2)
    out = compose(phi, [z1 + z2])
    assert expect_gaussian(out) == exact(2)


def test_eval_at_batch():
    z1, z2 = coordinate_polys(2)
    p = z1 * z2.conj()
    pts = np.array([[1.0, 1j], [2.0, 3.0]])
    assert np.allclose(p.eval_at(pts), [-1j, 6.0])


def test_mc_expectation_is_worker_independent():
    z, = coordinate_polys(1)
    p = z * z.conj()
    one = mc_expectation(p, 20000, seed=3, workers=1)
    four = mc_expectation(p, 20000, seed=3, workers=4)
    assert one == four
    mean, se = one
    assert abs(mean - 1.0) <= 4 * se


def test_mc_expectation_sample_floor():
    with pytest.raises(DomainError):
        mc_expectation(WickPoly.const(1), 10, seed=0)


@pytest.mark.parametrize("seed", range(5))
def test_gaussian_integration_by_parts(seed):
    # E[zeta_k conj(Q)] = E[conj(dQ/dzeta_k)] for the standard complex Gaussian.
    rng = np.random.default_rng(seed)
    for _ in range(10):
        d = int(rng.integers(1, 3))
        q = random_poly(rng, d, 4)
        for k in range(d):
            lhs = expect_gaussian(WickPoly.zeta(d, k) * q.conj())
            rhs = expect_gaussian(q.d_z(k).conj())
            assert lhs == rhs


@pytest.mark.parametrize("a,b", [(1, 0), (0, 1), (2, 0), (1, 1), (3, 0), (2, 1), (1, 2), (0, 3)])
def test_chain_rule(a, b):
    rng = np.random.default_rng(10 * a + b)
    f = random_poly(rng, 2, 2)
    phi = WickPoly.monomial(1, [a], [b])
    for k in range(2):
        lhs = compose(phi, [f]).d_z(k)
        rhs = (compose(phi.d_z(0), [f]) * f.d_z(k)
               + compose(phi.d_zbar(0), [f]) * f.conj().d_z(k))
        assert lhs == rhs
