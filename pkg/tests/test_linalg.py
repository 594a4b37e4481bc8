import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from syzcurves.eigenscheme import Derivation, eigenscheme_ideal
from syzcurves.linalg import (QQ, BackendDisagreement, PrimePool, basis_size, image_membership,
                              kernel_and_rank, majority, mono_index, monomial_basis, multiplication_map,
                              reference_rank)
from syzcurves.poly import parse


@pytest.mark.parametrize("k,size", [(0, 1), (2, 6), (10, 66)])
def test_basis_sizes(k, size):
    assert len(monomial_basis(k)) == size == basis_size(k)


def test_monomial_order_within_degree():
    mons = monomial_basis(2).monomials
    assert mons[:3] == ((2, 0, 0), (1, 1, 0), (1, 0, 1))
    assert all(mono_index(m) == i for i, m in enumerate(mons))


def test_vector_polynomial_roundtrip():
    b = monomial_basis(3)
    f = parse("x^3-2/3*x*y*z+5*z^3")
    assert b.polynomial(b.vector(f)) == f


def _koszul_map():
    q = parse("x^2+y^2+z^2")
    return multiplication_map([q.diff(v) for v in "xyz"], 2)


@pytest.mark.parametrize("backend", ["exact", "modular", "reference"])
def test_koszul_example(backend):
    w, ker = kernel_and_rank(_koszul_map(), backend)
    assert w.rank == 6
    if ker is not None:
        assert len(ker) == 3


def test_zero_map():
    m = multiplication_map([parse("0"), parse("0"), parse("0")], 1)
    w, ker = kernel_and_rank(m, "exact")
    assert w.rank == 0 and len(ker) == m.shape[1]


def test_zero_matrix_three_by_six():
    M = QQ.matrix(3, 6, [])
    assert QQ.rank(M) == 0
    assert len(QQ.nullspace(M)) == 6


def test_f0_degree_five_syzygies(f0):
    m = multiplication_map([f0.diff(v) for v in "xyz"], 14)
    assert m.shape == (basis_size(14), 3 * basis_size(5))
    w, ker = kernel_and_rank(m, "exact")
    assert len(ker) == 2
    for vec in ker:
        assert m.expand(vec).is_zero()
    mod, _ = kernel_and_rank(m, "modular", seed=3)
    assert mod.rank == w.rank


def test_membership_examples(f0):
    I = eigenscheme_ideal(Derivation.delta(f0))
    z20 = parse("z^20")
    mem = image_membership(multiplication_map(I.generators(), 20), z20)
    assert mem.member
    m = multiplication_map(I.generators(), 20)
    assert m.expand(mem.witness) == z20
    assert not image_membership(multiplication_map(I.generators(), 10), f0)
    zero = image_membership(multiplication_map(I.generators(), 12), parse("0"))
    assert zero.member and not any(zero.witness or [])


def test_non_membership_functional_separates(f0):
    I = eigenscheme_ideal(Derivation.delta(f0))
    m = multiplication_map(I.generators(), 10)
    mem = image_membership(m, f0)
    lam = mem.functional
    vec = monomial_basis(10).vector(f0)
    assert sum(a * b for a, b in zip(lam, vec)) != 0
    for gen in I.generators():
        gv = monomial_basis(10).vector(gen)
        assert sum(a * b for a, b in zip(lam, gv)) == 0


def test_prime_pool_is_seeded_and_avoids_scale():
    a, b = PrimePool(7, 2 * 3 * 5), PrimePool(7, 2 * 3 * 5)
    assert [a.get(i) for i in range(3)] == [b.get(i) for i in range(3)]
    assert all(1 << 61 <= a.get(i) < 1 << 62 for i in range(3))
    assert PrimePool(8, 1).get(0) != a.get(0)


def test_majority_rules():
    assert majority([4, 4], lambda: pytest.fail("third prime not needed")) == (4, True)
    assert majority([4, 5], lambda: 5) == (5, False)
    with pytest.raises(BackendDisagreement):
        majority([1, 2], lambda: 3)


matrices = st.integers(1, 7).flatmap(lambda r: st.integers(1, 7).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_ranks_agree_with_sympy(rows):
    n, m = len(rows), len(rows[0])
    entries = [(i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row) if v]
    expected = sympy.Matrix(rows).rank()
    assert QQ.rank(QQ.matrix(n, m, entries)) == expected
    assert reference_rank(n, m, entries) == expected
    F = PrimePool(0).field(0)
    assert F.rank(F.matrix(n, m, entries)) == expected


def test_rank_drops_only_at_a_dividing_prime():
    from syzcurves.linalg import PrimeField
    entries = [(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 6 + 7)]  # det = 7
    assert QQ.rank(QQ.matrix(2, 2, entries)) == 2
    assert PrimeField(7).rank(PrimeField(7).matrix(2, 2, entries)) == 1
