import numpy as np
import pytest

from chaoskit.chaos import abs_moment_exact
from chaoskit.errors import DomainError, ShapeError
from chaoskit.moments import (GAP_ROUTES, aux_kernels, fm_gap, fm_gap_routes, fmt_diagnostic,
                              fmt_sandwich, fourth_moment_kernel, fourth_moment_via_derivatives,
                              gaussian_limit_sequence, variance_formulas, variance_oracle)
from chaoskit.polyfun import exact, to_complex
from chaoskit.tensor import Kernel, random_kernel

MIXED_TYPES = [(1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (3, 1), (2, 2)]


@pytest.mark.parametrize("route", GAP_ROUTES)
def test_gap_of_e11(e11, route):
    assert fm_gap(e11, route) == pytest.approx(6.0, abs=1e-12)


def test_unknown_route(e11):
    with pytest.raises(DomainError):
        fm_gap(e11, 'bogus')


def test_gap_needs_positive_order():
    with pytest.raises(DomainError):
        fm_gap(Kernel.scalar(1.0, 1))


def test_gap_of_ones_kernel():
    ones = Kernel(1, 2, 1, np.ones((1, 1, 1)))
    report = fm_gap_routes(ones)
    assert report.direct == pytest.approx(168.0)
    assert report.max_rel_error() <= 1e-12


@pytest.mark.parametrize("d", [1, 2, 5, 10])
def test_gaussian_limit_family_gap(d):
    f, = gaussian_limit_sequence([d])
    assert fm_gap(f) == pytest.approx(6.0 / d, rel=1e-12)


@pytest.mark.parametrize("m,n", MIXED_TYPES)
def test_routes_agree_on_random_kernels(m, n):
    f = random_kernel(np.random.default_rng(100 * m + n), 2, m, n)
    report = fm_gap_routes(f)
    assert report.max_rel_error() <= 1e-9
    assert report.direct >= -1e-9 * max(1.0, abs(report.psi))


def test_fourth_moment_from_kernels(e11):
    assert fourth_moment_kernel(e11) == pytest.approx(9.0)
    assert fourth_moment_via_derivatives(e11) == exact(9)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (0, 2)])
def test_fourth_moment_derivative_identity(m, n):
    f = random_kernel(np.random.default_rng(7 + m), 2, m, n)
    lhs = to_complex(fourth_moment_via_derivatives(f))
    rhs = to_complex(abs_moment_exact(f, 4))
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_derivative_variances_of_e11(e11):
    v = variance_formulas(e11)
    assert v.d_norm == pytest.approx(1.0)
    assert v.dbar_norm == pytest.approx(1.0)
    assert v.cross == pytest.approx(1.0)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_derivative_variances_against_oracle(m, n):
    f = random_kernel(np.random.default_rng(31 * m + n), 2, m, n)
    got, want = variance_formulas(f), variance_oracle(f)
    for a, b in zip(got, want):
        assert a == pytest.approx(b, rel=1e-9, abs=1e-9)


def test_aux_kernel_levels(e11):
    aux = aux_kernels(e11)
    assert aux.l == 2 and aux.lp == 2
    assert aux.psi_level(1) == (1, 1)
    assert aux.phi_level(2) == (0, 0)


def test_sandwich(e11):
    report = fmt_sandwich(e11)
    assert report.nonnegative and report.ordered and report.consistent
    assert report.gap == pytest.approx(6.0)
    with pytest.raises(DomainError):
        fmt_sandwich(Kernel.vector([1.0]))


@pytest.mark.parametrize("m,n", [(2, 1), (2, 2)])
def test_sandwich_on_random_kernels(m, n):
    report = fmt_sandwich(random_kernel(np.random.default_rng(5), 2, m, n))
    assert report.nonnegative and report.ordered and report.consistent


def test_diagnostic_rows():
    rows = fmt_diagnostic(gaussian_limit_sequence([1, 4]), samples=4000, seed=3)
    assert [r.d for r in rows] == [1, 4]
    for row, d in zip(rows, [1, 4]):
        assert row.sigma2 == pytest.approx(1.0)
        assert row.second == pytest.approx(1.0)
        assert row.gap == pytest.approx(6.0 / d)
        assert row.fourth_target == pytest.approx(row.gap)
    record = rows[1].to_row()
    assert record['k'] == 1
    assert 'max_contraction' in record and 'normality' in record


def test_diagnostic_validation(e11):
    with pytest.raises(DomainError):
        fmt_diagnostic([], 4000, 0)
    with pytest.raises(ShapeError):
        fmt_diagnostic([e11, Kernel(1, 2, 0, np.ones((1, 1)))], 4000, 0)
    with pytest.raises(DomainError):
        fmt_diagnostic([Kernel.vector([1.0])], 4000, 0)
    with pytest.raises(DomainError):
        fmt_diagnostic([e11], 10, 0)
