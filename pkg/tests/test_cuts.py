from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from cnckit.cuts import (FULL, MINUS_INF, ConvexSet, Cut, closed_interval, convex_from_json,
                         convex_intersect, convex_is_empty, convex_member, convex_to_json, cut_at,
                         cut_cmp, cut_le, cut_lt, is_valuational, stabilizer)
from cnckit.groups import parse_group
from cnckit.quadirr import QuadIrr

Z = parse_group("int")
Q = parse_group("rat")
L2 = parse_group("lexint:2")
LQ3 = parse_group("lexrat:3")
SQRT2 = QuadIrr(0, 1, 1, 2)


def test_cut_compare_examples():
    assert cut_cmp(Q, cut_le(Q, Fraction(1)), Cut("gap", SQRT2, False)) < 0
    assert cut_cmp(Z, MINUS_INF, cut_le(Z, 0)) < 0
    assert cut_cmp(Z, cut_le(Z, 3), cut_le(Z, 3)) == 0


def test_convex_member_examples():
    C = ConvexSet(cut_le(Q, Fraction(0)), Cut("gap", SQRT2, False))
    assert convex_member(Q, Fraction(1), C)
    assert not convex_member(Q, Fraction(0), C)
    assert convex_member(Z, 5, ConvexSet(MINUS_INF, cut_le(Z, 5)))


def test_convex_intersect_examples():
    C = convex_intersect(Z, ConvexSet(MINUS_INF, cut_le(Z, 10)), closed_interval(Z, 3, 1000))
    C = convex_intersect(Z, C, FULL)
    assert [x for x in range(-20, 20) if convex_member(Z, x, C)] == list(range(3, 11))
    D = convex_intersect(Z, ConvexSet(MINUS_INF, cut_le(Z, 2)), ConvexSet(cut_le(Z, 5), Cut("+inf")))
    assert convex_is_empty(Z, D)


def test_valuational_and_stabilizer():
    assert not is_valuational(Z, cut_le(Z, 7))
    slab = cut_at(L2, (0,), True)
    assert is_valuational(L2, slab)
    assert not is_valuational(Q, Cut("gap", SQRT2, False))
    assert stabilizer(L2, slab).descriptor == "prefix:1"
    assert stabilizer(Z, cut_le(Z, 7)).is_zero
    assert str(stabilizer(LQ3, cut_at(LQ3, (Fraction(1), Fraction(2)), True))) == "{0}x{0}xQ"


def test_prefix_cut_is_translation_invariant_on_window():
    slab = cut_at(L2, (0,), True)
    box = [(a, b) for a in range(-3, 4) for b in range(-20, 21)]
    from cnckit.cuts import cut_contains

    for x in box:
        assert cut_contains(L2, slab, x) == cut_contains(L2, slab, L2.add(x, (0, 1)))


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-60, 60))
def test_int_interval_membership(lo, hi, x):
    C = closed_interval(Z, lo, hi)
    assert convex_member(Z, x, C) == (lo <= x <= hi)
    assert convex_is_empty(Z, C) == (lo > hi)


@given(st.fractions(-20, 20, max_denominator=12), st.fractions(-20, 20, max_denominator=12))
def test_cut_order_matches_points(a, b):
    assert (cut_cmp(Q, cut_le(Q, a), cut_le(Q, b)) > 0) == (a > b)
    assert cut_cmp(Q, cut_lt(Q, a), cut_le(Q, a)) < 0


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_convex_json_round_trip(a, b):
    C = closed_interval(L2, a, b)
    assert convex_from_json(L2, convex_to_json(L2, C)) == C
