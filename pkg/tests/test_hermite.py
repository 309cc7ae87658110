import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chaoskit.errors import ConditioningError, DegreeCapError, DomainError
from chaoskit.hermite import (RHO, Z, ZBAR, ThetaMatrix, complex_from_real, complex_to_directional,
                              default_thetas, directional_to_complex, eigen_operator, eval_H,
                              eval_J, gaussian_inner, gf_partial_sum, hermite_pair_rep,
                              J_product_expand, monomial_to_J, expansion_to_zpoly, poly_J,
                              real_from_complex, rodrigues_poly, rotated_argument)

degrees = st.integers(min_value=0, max_value=6)


def test_j11_text():
    assert poly_J(1, 1).to_text() == "z*zbar - rho"


def test_j21_text():
    assert poly_J(2, 1).to_text() == "z^2*zbar - 2*z*rho"


def test_low_degree_values():
    z = 1.5 - 0.5j
    assert eval_J(0, 0, z, 2.0) == 1
    assert eval_J(1, 0, z, 2.0) == z
    assert eval_J(0, 1, z, 2.0) == z.conjugate()
    assert eval_J(1, 1, z, 2.0) == pytest.approx(abs(z) ** 2 - 2.0)


def test_degree_cap():
    with pytest.raises(DegreeCapError):
        poly_J(10, 7)
    assert poly_J(10, 7, cap=None).m == 10


def test_negative_degree_rejected():
    with pytest.raises(DomainError):
        poly_J(-1, 2)


@settings(max_examples=30, deadline=None)
@given(degrees, degrees)
def test_rodrigues_matches_explicit(m, n):
    assert rodrigues_poly(m, n) == poly_J(m, n).poly


@settings(max_examples=30, deadline=None)
@given(degrees, degrees)
def test_wirtinger_derivatives(m, n):
    j = poly_J(m, n).poly
    if m:
        assert j.d_z() == poly_J(m - 1, n).poly * m
    if n:
        assert j.d_zbar() == poly_J(m, n - 1).poly * n


@settings(max_examples=30, deadline=None)
@given(degrees, degrees)
def test_raising_recursion(m, n):
    step = Z * poly_J(m, n).poly
    if n:
        step = step - poly_J(m, n - 1).poly * RHO * n
    assert poly_J(m + 1, n).poly == step


@settings(max_examples=30, deadline=None)
@given(degrees, degrees)
def test_eigen_operator(m, n):
    j = poly_J(m, n).poly
    a_part, b_part = eigen_operator(j)
    assert a_part == j * (m + n)
    assert b_part == j * (m - n)


@pytest.mark.parametrize("lam", [0.3, 0.6j, 0.4 - 0.2j])
@pytest.mark.parametrize("z", [0.5, 2.0 * cmath.exp(0.7j)])
@pytest.mark.parametrize("rho", [1.0, 2.0])
def test_generating_function(lam, z, rho):
    lam, z = complex(lam), complex(z)
    closed = cmath.exp(lam.conjugate() * z + lam * z.conjugate() - rho * abs(lam) ** 2)
    assert abs(gf_partial_sum(lam, z, rho, 25, 25) - closed) <= 1e-10


def test_monomial_to_j():
    assert monomial_to_J(2, 2) == {(2, 2): (1, 0), (1, 1): (4, 1), (0, 0): (2, 2)}


def test_j11_squared():
    assert J_product_expand(1, 1, 1, 1) == {(2, 2): (1, 0), (1, 1): (2, 1), (0, 0): (1, 2)}
    assert expansion_to_zpoly(J_product_expand(1, 1, 1, 1)) == poly_J(1, 1).poly ** 2


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_product_expansion_is_exact(m, n, p, q):
    expected = poly_J(m, n).poly * poly_J(p, q).poly
    assert expansion_to_zpoly(J_product_expand(m, n, p, q)) == expected


@pytest.mark.parametrize("m,n,p,q", [(1, 1, 1, 1), (2, 1, 2, 1), (2, 0, 0, 2), (3, 1, 1, 0)])
def test_orthogonality_by_quadrature(m, n, p, q):
    rho = 2.0
    expected = math.factorial(m) * math.factorial(n) * rho ** (m + n) if (m, n) == (p, q) else 0.0
    assert abs(gaussian_inner(m, n, p, q, rho) - expected) <= 1e-8


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_real_complex_tables_pointwise(l):
    x, y = 0.7, -1.3
    for m in range(l + 1):
        table = complex_from_real(l, m)
        value = sum(c * eval_H(k, x) * eval_H(l - k, y) for k, c in table.items())
        assert abs(value - eval_J(m, l - m, complex(x, y), 2.0)) <= 1e-10


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_real_complex_tables_are_inverse(l):
    to_complex = np.array([[complex_from_real(l, m)[k] for k in range(l + 1)] for m in range(l + 1)])
    to_real = np.array([[real_from_complex(k, l)[m] for m in range(l + 1)] for k in range(l + 1)])
    assert np.allclose(to_real @ to_complex, np.eye(l + 1), atol=1e-12)


def test_theta_matrix_validation():
    with pytest.raises(DomainError):
        ThetaMatrix.build([0.5, 1.0])
    with pytest.raises(DomainError):
        ThetaMatrix.build([3.5])
    with pytest.raises(ConditioningError):
        ThetaMatrix.build([1.0, 1.0 - 1e-15, 1.0 - 2e-15])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_directional_tables(n):
    thetas = default_thetas(n)
    assert directional_to_complex(n, thetas).matrix.shape == (n + 1, n + 1)
    assert directional_to_complex(n, 0.3).matrix.shape == (1, n + 1)
    assert complex_to_directional(n, thetas).matrix.shape == (n + 1, n + 1)
    with pytest.raises(DomainError):
        complex_to_directional(n, default_thetas(n + 1))


def test_directional_degree_one_at_zero_angle():
    # H_1(x) = x = (z + zbar) / 2 for h = sqrt(2) e1.
    row = directional_to_complex(1, 0.0).matrix[0]
    assert np.allclose(row, [0.5, 0.5])


@settings(max_examples=30, deadline=None)
@given(degrees, degrees)
def test_rho_derivative(m, n):
    j = poly_J(m, n).poly
    if m and n:
        assert j.d_rho() == poly_J(m - 1, n - 1).poly * (-m * n)
    else:
        assert not j.d_rho()


@settings(max_examples=30, deadline=None)
@given(degrees, degrees)
def test_conjugate_recursion(m, n):
    step = ZBAR * poly_J(m, n).poly
    if m:
        step = step - poly_J(m - 1, n).poly * RHO * m
    assert poly_J(m, n + 1).poly == step


@pytest.mark.parametrize("m,n", [(0, 0), (1, 0), (1, 1), (2, 1), (3, 3), (5, 2)])
def test_scaling(m, n):
    z = 0.8 - 1.1j
    root2 = math.sqrt(2.0)
    assert eval_J(m, n, root2 * z, 2.0) == pytest.approx(2 ** ((m + n) / 2) * eval_J(m, n, z, 1.0),
                                                         rel=1e-12, abs=1e-12)
    for c in (0.5, 3.0):
        assert eval_J(m, n, c * z, c * c * 1.7) == pytest.approx(c ** (m + n) * eval_J(m, n, z, 1.7),
                                                                 rel=1e-12, abs=1e-12)


@pytest.fixture
def plane_points():
    xy = np.random.default_rng(31).standard_normal((20, 2))
    return xy[:, 0], xy[:, 1]


def _j_values(l, x, y):
    return np.array([[eval_J(m, l - m, complex(a, b), 2.0) for a, b in zip(x, y)] for m in range(l + 1)])


def _h_products(l, x, y):
    return np.array([eval_H(k, x) * eval_H(l - k, y) for k in range(l + 1)])


@pytest.mark.parametrize("l", range(7))
def test_real_complex_identities_at_random_points(l, plane_points):
    x, y = plane_points
    j, prods = _j_values(l, x, y), _h_products(l, x, y)
    for m in range(l + 1):
        got = sum(c * prods[k] for k, c in complex_from_real(l, m).items())
        assert np.max(np.abs(got - j[m])) <= 1e-9
    for k in range(l + 1):
        got = sum(c * j[m] for m, c in real_from_complex(k, l).items())
        assert np.max(np.abs(got - prods[k])) <= 1e-9


@pytest.mark.parametrize("l", range(7))
def test_directional_identities_at_random_points(l, plane_points):
    x, y = plane_points
    thetas = default_thetas(l)
    directional = np.array([eval_H(l, x * math.cos(t) + y * math.sin(t)) for t in thetas])
    prods = _h_products(l, x, y)
    for k in range(l + 1):
        assert np.max(np.abs(hermite_pair_rep(l, k, thetas) @ directional - prods[k])) <= 1e-9
    to_directional = complex_to_directional(l, thetas).matrix
    assert np.max(np.abs(to_directional @ directional - _j_values(l, x, y))) <= 1e-9


@pytest.mark.parametrize("l", range(1, 7))
def test_direction_coefficients_invert(l):
    thetas = default_thetas(l)
    forward = directional_to_complex(l, thetas).matrix
    inverse = complex_to_directional(l, thetas).matrix
    assert np.allclose(inverse @ forward, np.eye(l + 1), atol=1e-9)


@pytest.mark.parametrize("theta", [0.0, math.pi / 5])
@pytest.mark.parametrize("l", [1, 2, 4, 6])
def test_direction_to_complex_pointwise(theta, l, plane_points):
    x, y = plane_points
    f, g = math.cos(1.1), math.sin(1.1)
    d = directional_to_complex(l, theta).matrix[0]
    w = rotated_argument(f, g, theta, x, y)
    rhs = sum(d[k] * np.array([eval_J(k, l - k, p, 2.0) for p in w]) for k in range(l + 1))
    assert np.max(np.abs(rhs - eval_H(l, f * x + g * y))) <= 1e-9


def test_hermite_pair_rep_by_hand():
    thetas = [math.pi / 2, math.pi / 4]
    assert np.allclose(hermite_pair_rep(1, 0, thetas), [1.0, 0.0])
    # Row 1 reproduces x: -1 * y + sqrt(2) * (x + y) / sqrt(2).
    x, y = 0.3, -0.8
    row = hermite_pair_rep(1, 1, thetas)
    assert row[0] * y + row[1] * (x + y) / math.sqrt(2) == pytest.approx(x)
    with pytest.raises(DomainError):
        hermite_pair_rep(1, 2, thetas)
