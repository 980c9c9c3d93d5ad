"""Exact simplex: strict feasibility, optimization, witnesses."""

import random
from fractions import Fraction

import pytest

from lecturehall.errors import DomainError
from lecturehall.lp import lp_feasible, lp_feasible_strict, lp_optimize, rational_lp


def check_witness(lp, witness):
    for coeffs, rel, rhs in lp.constraints:
        lhs = sum(c * w for c, w in zip(coeffs, witness))
        if rel == ">":
            assert lhs > rhs
        elif rel == "==":
            assert lhs == rhs
        else:
            assert lhs >= rhs


def test_open_interval_witness():
    lp = rational_lp(1, [((1,), ">", 0), ((1,), "<", 1)])
    w = lp_feasible_strict(lp)
    assert w == (Fraction(1, 2),)
    check_witness(lp, w)


def test_empty_interval_infeasible():
    lp = rational_lp(1, [((1,), ">", 0), ((1,), "<", 0)])
    assert lp_feasible_strict(lp) is None


def test_unbounded_slack_finite_witness():
    lp = rational_lp(1, [((1,), ">", 0)])
    w = lp_feasible_strict(lp)
    assert w is not None and w[0] > 0
    check_witness(lp, w)


def test_two_cell_fold_system_feasible():
    # Regularity system of the two-cell triangulation of the n=3 simplex,
    # solved by hand: heights h0..h3 sit on (1,1,1),(1,1,0),(1,2,0),(1,0,0)
    # with cells {0,1,2} and {0,1,3}. Interpolating each cell at the vertex
    # it misses gives 2*h1 - h2 - h3 < 0 from both sides of the single wall.
    lp = rational_lp(4, [
        ((0, 2, -1, -1), "<", 0),
        ((0, 2, -1, -1), "<", 0),
    ])
    w = lp_feasible_strict(lp)
    assert w is not None
    check_witness(lp, w)
    # the 0,0,0,1-like witness from the hand solution is accepted too
    check_witness(lp, (Fraction(0), Fraction(0), Fraction(0), Fraction(1)))


def test_equality_constraints():
    lp = rational_lp(2, [((1, 1), "==", 2), ((1, -1), "==", 0)])
    w = lp_feasible_strict(lp)
    assert w == (Fraction(1), Fraction(1))


def test_mixed_strict_equality():
    lp = rational_lp(2, [((1, 1), "==", 1), ((1, 0), ">", 0), ((0, 1), ">", 0)])
    w = lp_feasible_strict(lp)
    assert w is not None and w[0] > 0 and w[1] > 0 and w[0] + w[1] == 1


def test_no_constraints_trivially_feasible():
    lp = rational_lp(2, [])
    assert lp_feasible_strict(lp) is not None


def test_invalid_constraint_length():
    with pytest.raises(DomainError):
        rational_lp(2, [((1,), ">=", 0)])


def test_optimize_simple_box():
    cons = [((1,), ">=", 0), ((-1,), ">=", -5)]
    status, x, value = lp_optimize(1, cons, (1,), maximize=True)
    assert (status, value) == ("optimal", 5)
    status, x, value = lp_optimize(1, cons, (1,), maximize=False)
    assert (status, value) == ("optimal", 0)


def test_optimize_unbounded_detected():
    status, _, _ = lp_optimize(1, [((1,), ">=", 0)], (1,), maximize=True)
    assert status == "unbounded"


def test_optimize_infeasible_detected():
    status, _, _ = lp_optimize(1, [((1,), ">=", 1), ((-1,), ">=", 0)], (1,))
    assert status == "infeasible"


def test_optimize_over_triangle():
    # max x+y over the triangle x,y >= 0, x + 2y <= 4
    cons = [((1, 0), ">=", 0), ((0, 1), ">=", 0), ((-1, -2), ">=", -4)]
    status, x, value = lp_optimize(2, cons, (1, 1))
    assert status == "optimal" and value == 4 and x == (Fraction(4), Fraction(0))


def test_random_feasible_systems_produce_valid_witnesses():
    rng = random.Random(31337)
    for _ in range(30):
        n = rng.randint(1, 3)
        center = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        cons = []
        for _ in range(rng.randint(1, 5)):
            coeffs = tuple(Fraction(rng.randint(-4, 4)) for _ in range(n))
            margin = sum(c * x for c, x in zip(coeffs, center))
            cons.append((coeffs, ">=", margin - rng.randint(0, 3)))
        lp = rational_lp(n, cons)
        w = lp_feasible_strict(lp)
        assert w is not None
        check_witness(lp, w)


def test_random_strict_systems_around_open_ball():
    rng = random.Random(98765)
    for _ in range(20):
        n = rng.randint(1, 3)
        cons = []
        for j in range(n):
            e = tuple(Fraction(1 if i == j else 0) for i in range(n))
            cons.append((e, ">", 0))
            cons.append((tuple(-c for c in e), ">", -1))
        lp = rational_lp(n, cons)
        w = lp_feasible_strict(lp)
        check_witness(lp, w)


def test_feasible_nonstrict_helper():
    assert lp_feasible(1, [((Fraction(1),), ">=", Fraction(2))]) == (Fraction(2),)
    assert lp_feasible(1, [((Fraction(1),), ">=", Fraction(2)),
                           ((Fraction(-1),), ">=", Fraction(-1))]) is None
