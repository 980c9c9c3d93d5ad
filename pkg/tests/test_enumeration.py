"""Lattice point enumeration, series identities, Eulerian polynomials."""

import itertools

import pytest

from lecturehall.errors import BudgetError, DomainError, VerificationError
from lecturehall.exact import IntPolynomial, dot, series_expand_rational
from lecturehall.enumeration import (
    bme_rhs,
    ceiling_series,
    difference_polytope_ehrhart_count,
    ehrhart_count,
    ehrhart_data_for,
    eulerian,
    eulerian_worpitzky_check,
    hilbert_count,
    hilbert_series_trunc,
    hilbert_slice,
    hstar_from_counts,
    lecture_hall_ehrhart_count,
    pyramid_base_ehrhart_count,
)
from lecturehall.geometry import (
    ConeH,
    PolytopeH,
    degree_grading,
    lecture_hall_cone,
    lecture_hall_polytope,
    ones_grading,
)


def box_scan_cone_slice(cone, grading, t, bound):
    """Independent oracle: scan a box, keep cone points of exact degree t."""
    n = cone.dim
    out = []
    for p in itertools.product(range(bound + 1), repeat=n):
        if cone.contains(p) and dot(grading.vector, p) == t:
            out.append(p)
    return out


def test_hilbert_count_small_slice():
    cone = lecture_hall_cone(2)
    assert hilbert_count(cone, ones_grading(2), 3) == 2
    assert hilbert_slice(cone, ones_grading(2), 3) == [(0, 3), (1, 2)]


def test_hilbert_count_degree_one():
    cone = lecture_hall_cone(3)
    assert hilbert_slice(cone, degree_grading(3), 1) == [
        (0, 0, 1), (0, 1, 2), (0, 2, 3), (1, 2, 3)]


def test_hilbert_count_origin_level():
    for n in (1, 2, 4):
        assert hilbert_count(lecture_hall_cone(n), ones_grading(n), 0) == 1


def test_hilbert_count_matches_box_oracle():
    cone = lecture_hall_cone(3)
    for grading in (ones_grading(3), degree_grading(3)):
        for t in range(5):
            expected = box_scan_cone_slice(cone, grading, t, 3 * t + 1)
            assert hilbert_slice(cone, grading, t) == expected


def test_series_ones_matches_product_n2():
    series = hilbert_series_trunc(lecture_hall_cone(2), ones_grading(2), 6)
    assert series.coeffs == (1, 1, 1, 2, 2, 2, 3)
    assert series == bme_rhs(2, 6)


def test_series_degree_grading_n3():
    series = hilbert_series_trunc(lecture_hall_cone(3), degree_grading(3), 3)
    assert series.coeffs == (1, 4, 9, 16)
    rhs = series_expand_rational(eulerian(2), [IntPolynomial.one_minus_z_power(3)], 3)
    assert series == rhs


def test_series_single_ray():
    series = hilbert_series_trunc(lecture_hall_cone(1), ones_grading(1), 4)
    assert series.coeffs == (1, 1, 1, 1, 1)


def test_series_guard():
    with pytest.raises(BudgetError):
        hilbert_series_trunc(lecture_hall_cone(2), ones_grading(2), 21)
    hilbert_series_trunc(lecture_hall_cone(2), ones_grading(2), 21, unsafe=True)


def test_ehrhart_examples():
    assert ehrhart_count(lecture_hall_polytope(2), 2) == 9
    assert ehrhart_count(lecture_hall_polytope(3), 1) == 8
    assert ehrhart_count(lecture_hall_polytope(4), 0) == 1


def test_ehrhart_unbounded_rejected():
    cone_rows = [(a, 0) for a in lecture_hall_cone(2).rows]
    with pytest.raises(DomainError):
        ehrhart_count(PolytopeH(2, tuple(cone_rows)), 1)


def test_power_count_identity():
    for n in range(1, 5):
        for t in range(7):
            assert lecture_hall_ehrhart_count(n, t) == (t + 1) ** n


def test_hstar_examples():
    assert hstar_from_counts([1, 4, 9, 16], 2) == IntPolynomial([1, 1])
    assert hstar_from_counts([1, 2, 3, 4], 1) == IntPolynomial([1])
    counts = [lecture_hall_ehrhart_count(3, t) for t in range(5)]
    assert hstar_from_counts(counts, 3) == eulerian(3)


def test_hstar_errors():
    with pytest.raises(DomainError):
        hstar_from_counts([1, 2], 1)
    with pytest.raises(VerificationError):
        hstar_from_counts([1, 4, 9, 16], 1)  # wrong dimension


def test_eulerian_small():
    assert eulerian(0) == IntPolynomial([1])
    assert eulerian(1) == IntPolynomial([1])
    assert eulerian(3) == IntPolynomial([1, 4, 1])
    assert eulerian(4) == IntPolynomial([1, 11, 11, 1])
    assert all(eulerian(n).is_palindromic() for n in range(8))


def test_eulerian_guard():
    with pytest.raises(BudgetError):
        eulerian(11)


def test_worpitzky():
    assert eulerian_worpitzky_check(1, 5)
    assert eulerian_worpitzky_check(3, 10)
    assert eulerian_worpitzky_check(5, 12)


def test_bme_rhs_examples():
    assert bme_rhs(1, 3).coeffs == (1, 1, 1, 1)
    assert bme_rhs(2, 6).coeffs == (1, 1, 1, 2, 2, 2, 3)
    assert bme_rhs(3, 5).coeffs == (1, 1, 1, 2, 2, 3)


def test_ceiling_series_examples():
    assert ceiling_series(1, 4).coeffs == (1, 1, 1, 1, 1)
    assert ceiling_series(2, 3).coeffs == (1, 3, 5, 7)
    assert ceiling_series(3, 3).coeffs == (1, 7, 19, 37)


def test_ceiling_series_identity():
    for n in range(1, 5):
        got = ceiling_series(n, 8)
        want = series_expand_rational(eulerian(n), [IntPolynomial.one_minus_z_power(n)], 8)
        assert got == want


def test_ceiling_guard():
    with pytest.raises(BudgetError):
        ceiling_series(3, 13)


def test_product_identity_through_n4():
    for n in range(1, 5):
        series = hilbert_series_trunc(lecture_hall_cone(n), ones_grading(n), 14)
        assert series == bme_rhs(n, 14)


def test_descent_identity_through_n4():
    for n in range(2, 5):
        series = hilbert_series_trunc(lecture_hall_cone(n), degree_grading(n), 8)
        rhs = series_expand_rational(eulerian(n - 1), [IntPolynomial.one_minus_z_power(n)], 8)
        assert series == rhs


def test_degree_one_slice_identification():
    # slice counts of the cone coincide with dilate counts one dimension down
    for n in range(2, 6):
        for t in range(9):
            assert (hilbert_count(lecture_hall_cone(n), degree_grading(n), t)
                    == lecture_hall_ehrhart_count(n - 1, t))


def test_pyramid_counts_agree():
    for n in range(2, 6):
        r = ehrhart_data_for("Rn", n)
        rt = ehrhart_data_for("Rn-tilde", n)
        assert r.hstar == rt.hstar == eulerian(n - 1)


def test_invalid_grading_rejected():
    from lecturehall.geometry import Grading

    with pytest.raises(DomainError):
        hilbert_count(lecture_hall_cone(2), Grading((0, 0)), 1)


def test_named_counts_small():
    assert difference_polytope_ehrhart_count(1, 5) == 1
    assert pyramid_base_ehrhart_count(2, 5) == 1
    assert [pyramid_base_ehrhart_count(3, t) for t in range(4)] == [1, 3, 5, 7]
