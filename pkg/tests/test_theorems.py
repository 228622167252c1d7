import pytest
from hypothesis import given, settings

from conftest import plane_arrangements
from plusone.arrangement import delete, make_arrangement
from plusone.catalog import addnot, b3, boolean, braid_cone, factor, shi_b, tangent
from plusone.classify import Verdict, classify
from plusone.theorems import (
    addition_classify,
    addition_deletion_check,
    combinatorial_deletion_check,
    conjecture_scan,
    default_pool,
    deletion_construct_pog,
    division_check,
    free_additions,
    free_exponents,
    free_filtration,
    mat_bch_check,
    plane_relative_check,
    relative_criterion,
    span_check,
)


def test_triple_factor_y():
    A = factor()
    r = addition_deletion_check(A, A.index([0, 1, 0]))
    assert r.deletion_verdict == "StrictPOG"
    assert r.exponents == ((1, 2, 5), None, (1, 1))
    assert r.sizes == (8, 7, 2) and r.d == 5


def test_triple_boolean_all_free():
    r = addition_deletion_check(boolean(3), 0)
    assert r.holds == (True, True, True) and r.conclusion == "all three hold"
    assert r.exponents[1] == (0, 1, 1)


def test_triple_factor_x_matches_exponents():
    r = addition_deletion_check(factor(), 0)
    assert r.pattern == 5 and r.exponents[1] == (1, 2, 4)


def test_division():
    r = division_check(factor(), 2)
    assert r.restriction_free and r.arrangement_free
    assert not division_check(tangent(), 3).arrangement_free


def test_mat_and_bch():
    assert mat_bch_check(braid_cone(), [1, 1, 0]).rule == "MAT"
    r = mat_bch_check(braid_cone(), [1, 0, 1])
    assert r.rule == "BCH" and r.predicted_free == (1, 2, 2)
    assert mat_bch_check(braid_cone(), [1, 1, 1]).rule is None
    with pytest.raises(ValueError):
        mat_bch_check(tangent(), [1, -1, 0])


def test_addition_prediction_plane_case():
    r = addition_classify(braid_cone(), [1, 1, 1])
    assert r.rule == "plane addition"
    assert r.observed.verdict is Verdict.STRICT_POG
    assert (r.predicted_poexp, r.predicted_level) == ((1, 2, 3), 3)
    assert (r.observed.exponents, r.observed.level) == ((1, 2, 3), 3)


def test_addition_hypothesis_fails_for_addnot():
    r = addition_classify(delete(addnot(), 7), [1, 0, 0, 1])
    assert r.rule is None and r.d == 1


@pytest.mark.parametrize("build, key", [(shi_b, (0, 0, 1)), (factor, (0, 1, 0)), (b3, (0, 1, 0))])
def test_constructed_deletion_matches_classify(build, key):
    A = build()
    i = A.index(key)
    c = deletion_construct_pog(A, i)
    r = classify(delete(A, i))
    assert c.free is None
    assert (c.pog.poexp, c.pog.level, c.pog.strict) == (r.exponents, r.level, True)
    assert tuple(sorted(c.pog.degrees)) == r.generator_degrees
    assert span_check(A, i, c.phi, c.pog.level + 4)


def test_constructed_deletion_free_branch():
    A = factor()
    c = deletion_construct_pog(A, 0)
    assert c.pog is None and c.free.exponents == (1, 2, 4)
    c = deletion_construct_pog(boolean(3), 0)
    assert c.free.exponents == (0, 1, 1)


def test_relative_criterion_shi():
    A = shi_b(2)
    r = relative_criterion(A, A.index([0, 0, 1]))
    assert r.branch2 and not r.branch1 and r.arrangement_free
    assert not r.branch2_literal
    assert r.deletion.level == r.d == 4
    r = relative_criterion(A, A.index([0, 1, 0]))
    assert r.large_level and r.large_level_holds and r.d == 5
    r = relative_criterion(A, A.index([1, 1, 0]))
    assert r.branch1 and not r.branch2


def test_relative_criterion_non_free():
    for i in range(4):
        r = relative_criterion(tangent(), i)
        assert not (r.branch1 or r.branch2 or r.arrangement_free)


@pytest.mark.parametrize("build, free", [(factor, True), (braid_cone, True), (boolean, True), (tangent, False)])
def test_plane_relative_check(build, free):
    r = plane_relative_check(build())
    assert r.free == free


def test_filtrations():
    r = free_filtration(boolean(3))
    assert r.exists and sorted(r.ordering) == [0, 1, 2]
    assert r.exponents[-1] == (1, 1, 1)
    assert not free_filtration(tangent()).exists
    r = free_filtration(factor())
    assert r.exponents[-1] == (1, 2, 5) and len(r.ordering) == 8


def test_free_additions_filters_members():
    r = free_additions(tangent(), [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert r.candidates == 0 and len(r.skipped) == 3 and not r.hits


def test_free_additions_tangent():
    r = free_additions(tangent(), [[1, 1, 0], [1, 2, 3]])
    assert [h.integer_form() for h, _ in r.hits] == [(1, 1, 0)]
    assert r.hits[0][1] == (1, 2, 2)
    # level 2 is not above every exponent, so uniqueness is not claimed
    assert not r.unique_asserted
    assert len(free_additions(tangent()).hits) == 3


def test_default_pool_excludes_members():
    A = tangent()
    pool = default_pool(A)
    assert pool and not any(h in A for h in pool)
    assert sorted(h.integer_form() for h in pool) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


def test_combinatorial_deletion():
    A = factor()
    assert [combinatorial_deletion_check(A, i).predicts_free for i in range(len(A))] == [
        True, False, True, True, True, True, True, True
    ]
    with pytest.raises(ValueError):
        combinatorial_deletion_check(tangent(), 0)


def test_conjecture_scan_factor():
    entries = conjecture_scan(factor())
    assert all(e.conjecture_holds for e in entries)
    y = entries[1]
    assert (y.d, y.is_root, y.local_codim, y.roots_below) == (6, False, 2, 3)


def test_free_exponents_pads_centre():
    assert free_exponents(make_arrangement(3, [])) == (0, 0, 0)
    assert free_exponents(make_arrangement(3, [[1, 0, 0], [0, 1, 0]])) == (0, 1, 1)


@settings(max_examples=10)
@given(plane_arrangements(max_size=6))
def test_addition_deletion_never_violated(A):
    for i in range(len(A)):
        addition_deletion_check(A, i)


@settings(max_examples=8)
@given(plane_arrangements(max_size=6))
def test_plane_criterion_never_violated(A):
    plane_relative_check(A)
