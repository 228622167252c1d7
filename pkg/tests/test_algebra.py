from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import elimination_rank
from plusone.algebra import (
    Poly,
    dim_homogeneous,
    monomial_basis,
    nullspace,
    poly_matrix_det,
    rank,
    rank_mod_p,
    rref,
    solve,
    sparse_rank_mod_p,
)

small = st.integers(-4, 4)


def polys(n=3, deg=3):
    mono = st.tuples(*[st.integers(0, deg)] * n)
    return st.dictionaries(mono, small.filter(bool), max_size=5).map(lambda t: Poly(n, t))


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=max_rows).map(
            lambda rows: (rows, c)
        )
    )


def test_poly_basics():
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    f = (x + y) ** 2
    assert f == x * x + x * y * 2 + y * y
    assert f.degree() == 2 and f.is_homogeneous()
    assert f.derivative(0) == x * 2 + y * 2
    assert f(1, 2) == 9
    q, r = f.divmod(x + y)
    assert q == x + y and not r


def test_monomial_basis_counts():
    assert len(monomial_basis(3, 4)) == dim_homogeneous(3, 4) == 15
    assert monomial_basis(2, 2) == ((2, 0), (1, 1), (0, 2))


@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == Poly.zero(3)


@given(polys(), polys().filter(bool))
def test_exact_division_recovers_factor(f, g):
    assert (f * g).exact_div(g) == f


@given(matrices())
def test_rank_agrees_with_plain_elimination(m):
    rows, c = m
    fr = [[Fraction(x) for x in r] for r in rows]
    assert rank(rows, c) == elimination_rank(fr)
    assert rank_mod_p(rows, c) == rank(rows, c)
    entries = [(i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r) if v]
    assert sparse_rank_mod_p(len(rows), c, entries) == rank(rows, c)


@given(matrices())
def test_nullspace_is_kernel(m):
    rows, c = m
    basis, free = nullspace(rows, c)
    assert len(basis) == c - rank(rows, c) == len(free)
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


def test_rref_and_solve():
    R, piv = rref([[2, 4], [1, 3]], 2)
    assert piv == [0, 1] and R == [[1, 0], [0, 1]]
    assert solve([[1, 1], [1, -1]], [3, 1], 2) == [2, 1]
    assert solve([[1, 1], [2, 2]], [1, 3], 2) is None


def test_large_rational_rref_uses_same_answer():
    # above the pure-Python threshold
    rows = [[Fraction(i * j + 1, j + 1) for j in range(40)] for i in range(20)]
    assert rank(rows, 40) == elimination_rank(rows) == 2


def test_det_of_polynomial_matrix():
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    assert poly_matrix_det([[x, y], [y, x]]) == x * x - y * y


def test_zero_sized_ranks():
    assert sparse_rank_mod_p(0, 3, []) == 0
    with pytest.raises(ZeroDivisionError):
        Poly.variable(2, 0).exact_div(Poly.zero(2))
