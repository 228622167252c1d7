from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from plusone.algebra import Poly
from plusone.arrangement import delete, make_arrangement, ziegler_restrict
from plusone.catalog import addnot, b3, boolean, braid_cone, factor, shi_b, tangent
from plusone.derivations import (
    Derivation,
    NotInModule,
    certified_dimension,
    check_relation,
    derivation_slice,
    euler_derivation,
    first_syzygies,
    is_member,
    minimal_generators,
    saito_check,
    section_polynomial,
    slice_dimension,
    theta_EH,
    ziegler_map,
)


def _y0(A):
    return A.index([0, 1, 0])


def test_euler_acts_by_degree():
    E = euler_derivation(3)
    f = Poly.linear([1, 2, 3]) ** 3
    assert E(f) == f * 3
    assert is_member(E, tangent())


def test_low_degree_slices_of_tangent():
    A = tangent()
    assert [derivation_slice(A, None, d).dim for d in range(4)] == [0, 1, 6, 14]
    assert slice_dimension(A, None, 3, exact=False) == 14


def test_slice_elements_are_members():
    A = factor()
    for th in derivation_slice(A, None, 2).basis:
        assert is_member(th, A)


def test_constraint_slice_kills_alpha():
    A = tangent()
    sl = derivation_slice(A, None, 2, constraint=3)
    for th in sl.basis:
        assert not th.apply_form(A[3].form)


def test_multiplicity_slice():
    A = make_arrangement(2, [[1, 0], [0, 1], [1, 1]])
    # D(A, (2,1,1)) has exponents (2, 2)
    assert [derivation_slice(A, (2, 1, 1), d).dim for d in range(4)] == [0, 0, 2, 4]


GENERATORS = [
    (boolean, (1, 1, 1), ()),
    (tangent, (1, 2, 2, 2), (3,)),
    (factor, (1, 2, 5), ()),
    (shi_b, (1, 4, 4), ()),
    (braid_cone, (1, 1, 2), ()),
]


@pytest.mark.parametrize("build, gdeg, sdeg", GENERATORS)
def test_generator_and_syzygy_degrees(build, gdeg, sdeg):
    A = build()
    G = minimal_generators(A)
    assert G.degrees == gdeg and G.euler_index == 0
    S = first_syzygies(G)
    assert S.degrees == sdeg
    for rel in S.relations:
        assert check_relation(G, rel)


@pytest.mark.parametrize(
    "build, gdeg, sdeg",
    [(factor, (1, 2, 5, 5), (6,)), (shi_b, (1, 4, 4, 4), (5,)), (b3, (1, 5, 7, 8), (9,))],
)
def test_deletions_have_one_extra_generator(build, gdeg, sdeg):
    A = build()
    i = _y0(A) if build is not shi_b else A.index([0, 0, 1])
    G = minimal_generators(delete(A, i))
    assert G.degrees == gdeg
    assert first_syzygies(G).degrees == sdeg


def test_addnot_generators():
    G = minimal_generators(addnot())
    assert G.degrees == (1, 3, 3, 3, 3, 3, 3)
    assert first_syzygies(G).degrees == (4, 4, 4, 4)


def test_saito_on_free_basis_and_rejects_non_members():
    A = factor()
    G = minimal_generators(A)
    res = saito_check(A, None, G.generators)
    assert res.holds and res.constant != 0
    with pytest.raises(NotInModule):
        saito_check(A, None, [euler_derivation(3), Derivation.zero(3) + euler_derivation(3) * Poly.variable(3, 0),
                              Derivation((Poly.constant(3, 1), Poly.zero(3), Poly.zero(3)))])
    with pytest.raises(ValueError):
        saito_check(A, None, G.generators[:2])


def test_certified_dimension_matches_exact():
    A = delete(b3(), 1)
    G = minimal_generators(A)
    for d in (10, 14):
        cert = certified_dimension(G, d)
        assert cert.dim == derivation_slice(A, None, d).dim
        assert cert.image_rank == cert.dim


def test_ziegler_map_lands_in_multiarrangement():
    A = shi_b(2)
    i = A.index([0, 0, 1])
    zr = ziegler_restrict(A, i)
    for th in derivation_slice(A, None, 4, constraint=i).basis:
        img = ziegler_map(th, A, zr)
        assert is_member(img, zr.restricted, zr.mult)
    with pytest.raises(NotInModule):
        ziegler_map(euler_derivation(3), A, i)


def test_theta_EH_degree():
    A = factor()
    i = _y0(A)
    zr = ziegler_restrict(A, i)
    assert section_polynomial(A, zr).degree() == len(A) - 1 - len(zr.restricted)
    assert theta_EH(A, i).degree == len(A) - len(zr.restricted)


@given(st.sampled_from([tangent, factor, braid_cone]), st.integers(0, 6))
def test_slice_dimension_modular_agrees(build, d):
    A = build()
    assert slice_dimension(A, None, d, exact=False) == derivation_slice(A, None, d).dim


def test_derivation_vector_round_trip():
    th = Derivation.from_vector(2, 1, [Fraction(1), 0, 0, Fraction(2)])
    assert th.vector(1) == [1, 0, 0, 2]
    with pytest.raises(ValueError):
        th.vector(2)
