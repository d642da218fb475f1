from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cnckit.groups import ConvexSubgroup, compare, in_nM, parse_group, unit_element

PHI = "(1+1*sqrt(5))/2"

Z = parse_group("int")
Q = parse_group("rat")
L2 = parse_group("lexint:2")
ZPHI = parse_group(f"z+alpha:{PHI}")

ints = st.integers(-10**6, 10**6)
small = st.integers(-50, 50)


def test_add_examples():
    assert Z.add(2, 3) == 5
    assert L2.add((1, -4), (0, 4)) == (1, 0)
    assert ZPHI.add((1, 2), (-1, 1)) == (0, 3)


def test_compare_examples():
    assert compare(L2, (1, -100), (0, 100)) == "gt"
    assert compare(ZPHI, (2, -1), (0, 0)) == "gt"
    assert compare(Q, Fraction(1, 3), Fraction(2, 6)) == "eq"


def test_in_nM_examples():
    assert in_nM(Z, 6, 2)
    assert in_nM(Q, Fraction(3, 5), 7)
    assert not in_nM(ZPHI, (3, -2), 2)


def test_unit_element():
    assert unit_element(Z) == 1
    assert unit_element(L2) == (0, 1)
    assert unit_element(Q) is None


def test_unit_is_least_positive_on_window():
    pos = [(a, b) for a in range(-3, 4) for b in range(-3, 4) if L2.compare((a, b), L2.zero) > 0]
    assert min(pos, key=L2.sort_key()) == unit_element(L2)


@pytest.mark.parametrize("text", ["int", "rat", "dyadic", "lexint:3", "lexrat:2", f"z+alpha:{PHI}"])
def test_format_parse_round_trip(text):
    spec = parse_group(text)
    for x in [spec.zero, spec.unit or spec.zero]:
        assert spec.parse(spec.format(x)) == x


@pytest.mark.parametrize("bad", ["nat", "lexint:0", "z+alpha:3", "lexint:x"])
def test_parse_group_rejects(bad):
    with pytest.raises(ValueError):
        parse_group(bad)


def test_dyadic_elements():
    D = parse_group("dyadic")
    assert D.element(Fraction(3, 8)) == Fraction(3, 8)
    with pytest.raises((TypeError, ValueError)):
        D.element(Fraction(1, 3))
    # 3 is invertible in Z[1/2] mod 2: one coset of 2M, three of 3M
    assert D.coset_count(2) == 1
    assert D.coset_count(3) == 3


@given(st.tuples(small, small), st.tuples(small, small), st.tuples(small, small))
def test_zalpha_order_is_translation_invariant(x, y, g):
    assert ZPHI.compare(x, y) == ZPHI.compare(ZPHI.add(x, g), ZPHI.add(y, g))


@given(st.tuples(small, small), st.tuples(small, small))
def test_zalpha_order_matches_float_when_far_apart(x, y):
    fx, fy = x[0] + x[1] * 1.6180339887498949, y[0] + y[1] * 1.6180339887498949
    if abs(fx - fy) > 1e-6:
        assert ZPHI.compare(x, y) == (1 if fx > fy else -1)


@given(st.tuples(ints, ints), st.integers(1, 30))
def test_residue_represents_coset(x, n):
    r = L2.residue(x, n)
    assert L2.in_nM(L2.sub(x, r), n)
    assert r in L2.residues(n)


@given(ints, ints, st.integers(1, 40))
def test_int_in_nM_is_divisibility(x, y, n):
    assert Z.in_nM(x - y, n) == ((x - y) % n == 0)
    assert (Z.residue(x, n) == Z.residue(y, n)) == Z.in_nM(x - y, n)


def test_convex_subgroup_membership():
    L3 = parse_group("lexint:3")
    H = ConvexSubgroup(L3, 2)
    assert H.contains((0, 0, 5)) and not H.contains((0, 1, 0))
    assert str(H) == "{0}x{0}xZ"
    assert ConvexSubgroup(L3, 0).is_whole and ConvexSubgroup(L3, 3).is_zero
    with pytest.raises(ValueError):
        ConvexSubgroup(Z, 2)
