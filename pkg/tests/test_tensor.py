import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chaoskit.errors import ShapeError, SymmetryError
from chaoskit.tensor import (Kernel, contract, contract_sym, identity_kernel, inner,
                             random_kernel, reversed_conjugate, symmetrize, tensor_power,
                             tensor_product, trace_k)

ranks = st.integers(min_value=0, max_value=3)


def test_shape_validation():
    with pytest.raises(ShapeError):
        Kernel(2, 1, 1, np.zeros((2, 3)))
    with pytest.raises(ShapeError):
        Kernel(0, 1, 0, np.zeros(0))


def test_basis_is_not_symmetric_until_symmetrized():
    f = Kernel.basis(2, [0, 1], [])
    assert not f.is_symmetric()
    with pytest.raises(SymmetryError):
        f.require_symmetric()
    g = symmetrize(f)
    assert g.is_symmetric()
    assert g.coeffs[0, 1] == g.coeffs[1, 0] == 0.5


@settings(max_examples=25, deadline=None)
@given(ranks, ranks, st.integers(1, 3), st.integers(0, 2 ** 32 - 1))
def test_symmetrize_is_idempotent(m, n, d, seed):
    rng = np.random.default_rng(seed)
    shape = (d,) * (m + n)
    raw = Kernel(d, m, n, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    once = symmetrize(raw)
    assert once.allclose(symmetrize(once), 1e-12)


def test_contraction_types(kernel_factory):
    f = kernel_factory(3, 2, 1)
    g = kernel_factory(3, 1, 2)
    assert contract(f, g, 0, 0).rank == (3, 3)
    assert contract(f, g, 2, 1).rank == (0, 0)
    assert contract(f, g, 1, 1).rank == (1, 1)
    with pytest.raises(ShapeError):
        contract(f, g, 3, 0)
    with pytest.raises(ShapeError):
        contract(f, kernel_factory(2, 1, 1), 0, 0)


def test_tensor_product_is_zero_contraction(kernel_factory):
    f, g = kernel_factory(2, 1, 1), kernel_factory(2, 2, 0)
    assert tensor_product(f, g).allclose(contract(f, g, 0, 0))
    assert tensor_product(f, g).rank == (3, 1)


def test_full_contraction_is_inner_product(kernel_factory):
    f, g = kernel_factory(3, 2, 1), kernel_factory(3, 2, 1)
    full = contract(f, reversed_conjugate(g), 2, 1)
    assert full.scalar_value() == pytest.approx(inner(f, g))


def test_vector_contraction():
    f = Kernel.vector([1.0, 2.0j])
    g = Kernel(2, 0, 1, np.array([3.0, 1.0]))
    assert contract(f, g, 1, 0).scalar_value() == pytest.approx(3.0 + 2.0j)


def test_reversed_conjugate_is_involution(kernel_factory):
    f = kernel_factory(2, 2, 1)
    h = reversed_conjugate(f)
    assert h.rank == (1, 2)
    assert reversed_conjugate(h).allclose(f)


def test_trace_of_identity():
    assert trace_k(identity_kernel(4), 1).scalar_value() == pytest.approx(4.0)
    with pytest.raises(ShapeError):
        trace_k(identity_kernel(4), 2)


def test_trace_of_tensor_power():
    v = np.array([1.0, 1j, 0.5])
    t = trace_k(tensor_power(v, 2, 2), 1)
    assert t.allclose(tensor_power(v, 1, 1) * np.vdot(v, v).real)


def test_contract_sym_is_symmetric(kernel_factory):
    f, g = kernel_factory(2, 2, 2), kernel_factory(2, 2, 1)
    assert contract_sym(f, g, 1, 1).is_symmetric()


def test_json_round_trip(kernel_factory):
    f = kernel_factory(2, 1, 2)
    assert Kernel.from_json(f.to_json()).allclose(f, 0.0)


def _index_pairs(f, g):
    return [(i, j) for i in range(min(f.m, g.n) + 1) for j in range(min(f.n, g.m) + 1)]


def test_contraction_norm_bound(rng):
    for _ in range(100):
        d = int(rng.integers(1, 4))
        a, b, c, dd = (int(k) for k in rng.integers(0, 3, size=4))
        f, g = random_kernel(rng, d, a, b), random_kernel(rng, d, c, dd)
        bound = f.norm() * g.norm()
        for i, j in _index_pairs(f, g):
            assert contract(f, g, i, j).norm() <= bound * (1 + 1e-12)


@pytest.mark.parametrize("i,j", [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)])
def test_contraction_is_bilinear(rng, i, j):
    f1, f2 = random_kernel(rng, 2, 2, 1), random_kernel(rng, 2, 2, 1)
    g1, g2 = random_kernel(rng, 2, 1, 2), random_kernel(rng, 2, 1, 2)
    c = 0.7 - 1.3j
    assert contract(f1 + f2 * c, g1, i, j).allclose(contract(f1, g1, i, j) + contract(f2, g1, i, j) * c)
    assert contract(f1, g1 * c + g2, i, j).allclose(contract(f1, g1, i, j) * c + contract(f1, g2, i, j))


@pytest.mark.parametrize("m,n,k", [(2, 2, 2), (3, 2, 2), (3, 3, 3), (2, 3, 1)])
def test_trace_is_iterated_single_trace(rng, m, n, k):
    f = random_kernel(rng, 3, m, n)
    iterated = f
    for _ in range(k):
        iterated = trace_k(iterated, 1)
    assert trace_k(f, k).allclose(iterated)


@pytest.mark.parametrize("m,n", [(2, 1), (1, 2), (2, 2), (3, 1)])
def test_symmetrize_commutes_with_reversed_conjugate(rng, m, n):
    raw = random_kernel(rng, 3, m, n, symmetric=False)
    assert symmetrize(reversed_conjugate(raw)).allclose(reversed_conjugate(symmetrize(raw)))
