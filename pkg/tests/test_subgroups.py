from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnckit.cnc import CncSet
from cnckit.cuts import cut_at
from cnckit.expr import eval_cnc, parse
from cnckit.groups import ConvexSubgroup, parse_group
from cnckit.oracle import rn_oracle
from cnckit.subgroups import QuotientMap, convex_subgroups, pullback, quotient, regular_subgroup

Z = parse_group("int")
Q = parse_group("rat")
L2 = parse_group("lexint:2")
LQ3 = parse_group("lexrat:3")


def test_convex_subgroup_chains():
    assert [H.j for H in convex_subgroups(LQ3)] == [3, 2, 1, 0]
    assert [str(H) for H in convex_subgroups(Q)] == ["{0}", "rat"]
    assert [str(H) for H in convex_subgroups(L2)] == ["{0}", "{0}xZ", "ZxZ"]


def test_slab_subgroup_is_convex_on_window():
    H = ConvexSubgroup(L2, 1)
    box = sorted(((a, b) for a in range(-2, 3) for b in range(-6, 7)), key=L2.sort_key())
    inside = [i for i, x in enumerate(box) if H.contains(x)]
    assert inside == list(range(inside[0], inside[-1] + 1))


def test_regular_subgroup_examples():
    assert regular_subgroup(Q, 5).is_whole
    assert regular_subgroup(Z, 7).is_whole
    assert regular_subgroup(L2, 2).descriptor == "prefix:1"


@pytest.mark.parametrize("name", ["int", "rat", "dyadic", "lexint:2", "lexint:3", "lexrat:2"])
@pytest.mark.parametrize("n", [1, 2, 3, 5, 12])
def test_regular_subgroup_matches_definition(name, n):
    from cnckit.checks import _rn_box

    spec = parse_group(name)
    H = regular_subgroup(spec, n)
    pts, inner = _rn_box(spec, n)
    defn = rn_oracle(spec, n, pts)
    assert all(defn[a] == H.contains(a) for a in inner)


def test_quotient_examples():
    q = QuotientMap(L2, ConvexSubgroup(L2, 1))
    assert quotient(q, (3, -7)) == 3
    assert quotient(q, L2.zero) == q.codomain.zero
    q3 = QuotientMap(LQ3, ConvexSubgroup(LQ3, 2))
    assert quotient(q3, (Fraction(1, 2), Fraction(2), Fraction(9))) == (Fraction(1, 2), Fraction(2))


def test_pullback_examples():
    q = QuotientMap(L2, ConvexSubgroup(L2, 1))
    Y = eval_cnc(parse("coset(2,1)&interval([0],+inf)"), Z)
    P = pullback(q, Y)
    box = [(a, b) for a in range(-4, 5) for b in range(-4, 5)]
    assert [x for x in box if P.member(x)] == [x for x in box if x[0] % 2 == 1 and x[0] >= 0]
    assert pullback(q, CncSet.whole(Z)) == CncSet.whole(L2)
    slab = pullback(q, eval_cnc(parse("point(3)"), Z))
    assert slab.modulus == 1
    assert slab.classes[L2.zero] == (type(slab.classes[L2.zero][0])(cut_at(L2, (2,), True), cut_at(L2, (3,), True)),)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(-5, 5), st.integers(-6, 6), st.integers(-6, 6))
def test_pullback_is_preimage(n, a, lo, hi):
    q = QuotientMap(L2, ConvexSubgroup(L2, 1))
    Y = eval_cnc(parse(f"coset({n},{a})&interval([{lo}],[{hi}])"), Z)
    P = pullback(q, Y)
    for x in [(s, t) for s in range(-7, 8) for t in (-3, 0, 5)]:
        assert P.member(x) == Y.member(x[0])
