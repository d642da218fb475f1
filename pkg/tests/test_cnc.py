from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnckit.cnc import CncPiece, CncSet, NotASubgroup, boolean, canonicalize, subgroup_reduce
from cnckit.cuts import FULL, MINUS_INF, ConvexSet, Cut, closed_interval, cut_le, cut_lt
from cnckit.expr import eval_cnc, parse
from cnckit.groups import parse_group
from cnckit.quadirr import QuadIrr

Z = parse_group("int")
Q = parse_group("rat")
L2 = parse_group("lexint:2")
ZPHI = parse_group("z+alpha:(1+1*sqrt(5))/2")


def S(text, spec=Z):
    return eval_cnc(parse(text), spec)


def members(A, lo=-100, hi=100):
    return [x for x in range(lo, hi + 1) if A.member(x)]


# -- canonical form ---------------------------------------------------------

def test_two_cosets_become_one():
    A = canonicalize(Z, [CncPiece(FULL, 0, 4), CncPiece(FULL, 2, 4)])
    assert A.modulus == 2
    assert list(A.classes) == [0]
    assert A.classes[0] == (FULL,)


def test_empty_list():
    A = canonicalize(Z, [])
    assert A.is_empty() and A.modulus == 1


def test_overlapping_pieces_merge():
    A = canonicalize(Z, [CncPiece(closed_interval(Z, 0, 10), 1, 3), CncPiece(closed_interval(Z, 5, 20), 1, 3)])
    assert members(A, -5, 25) == [x for x in range(-5, 26) if 0 <= x <= 20 and x % 3 == 1]
    # a bounded set over Z is finite, so its minimal presentation lists points
    assert A.modulus == 1
    assert A == S("interval([0],[20])&coset(3,1)")
    assert A.classify() == ("finite", [1, 4, 7, 10, 13, 16, 19])


def test_equal_sets_have_equal_forms():
    assert S("coset(6,0)|coset(6,2)|coset(6,4)") == S("coset(2,0)")
    assert S("!!interval([0],[9])") == S("interval([0],[9])")
    assert S("interval([0],[9])&coset(3,0)") != S("interval([0],[9])&coset(3,1)")


def test_refined_presentation_reduces_back():
    A = S("coset(3,(1,2))&interval([(0,0)],+inf)", L2)
    B = CncSet.from_classes(L2, 9, A.refine(9))
    assert B == A and B.modulus == A.modulus


# -- boolean algebra ---------------------------------------------------------

def test_complement_example():
    A = S("coset(2,0)&interval([0],+inf)")
    C = boolean("complement", A)
    want = S("coset(2,1)|(coset(2,0)&interval(-inf,[-2]))")
    assert C == want
    assert members(C) == [x for x in range(-100, 101) if x % 2 == 1 or x <= -2]


def test_identities():
    A = S("interval([3],[17])&coset(4,1)")
    E = CncSet.empty(Z)
    assert A | E == A
    assert A & CncSet.whole(Z) == A
    assert (A | ~A) == CncSet.whole(Z)
    assert (A & ~A).is_empty()


def test_distinct_cosets_are_disjoint_over_zphi():
    assert (S("coset(2,0)", ZPHI) & S("coset(2,1)", ZPHI)).is_empty()


def test_mismatched_groups_rejected():
    with pytest.raises(TypeError):
        S("coset(2,0)") | S("coset(2,0)", Q)


# -- membership, classification, windows -----------------------------------------

def test_member_examples():
    A = S("interval([0],[20])&coset(3,1)")
    assert A.member(7) and not A.member(8) and not A.member(22)
    assert not CncSet.empty(Z).member(0)
    B = CncSet.convex(ZPHI, ConvexSet(cut_le(ZPHI, (0, 0)), Cut("gap", QuadIrr(0, 1, 1, 5), False)))
    assert B.member((2, -1))


def test_classify_examples():
    assert S("interval([3],[5])").classify() == ("finite", [3, 4, 5])
    assert S("coset(2,0)").classify() == ("infinite", None)
    assert S("interval([2],[2])", Q).classify() == ("finite", [Fraction(2)])
    assert CncSet.empty(Z).classify() == ("empty", None)


def test_window_examples():
    assert S("coset(3,1)").window(0, 10) == [1, 4, 7, 10]
    assert S("coset(3,1)").window(5, 4) == []
    got = S("coset(2,0)", ZPHI).window(-2, 2, 2)
    assert all(p % 2 == 0 and q % 2 == 0 for p, q in got)
    assert got == ZPHI.sorted(got)
    assert (0, 0) in got and (2, 0) in got and (-2, 2) in got


def test_bitmap_agrees_with_member():
    from cnckit.oracle import Window, enum_window

    for spec, text in [(Z, "coset(3,1)|interval([-4],[2])"), (L2, "coset(2,(0,1))\\interval([(0,0)],[(1,3)])"),
                       (ZPHI, "coset(2,1)&interval((0),[3+1*alpha])")]:
        A = S(text, spec)
        pts = enum_window(Window(spec, -30, 30) if spec is Z else
                          Window(spec, (-3, -5), (3, 5)) if spec is L2 else Window(spec, None, None, 4))
        assert A.bitmap(pts) == [A.member(x) for x in pts]


def test_json_round_trip():
    A = S("coset(2,(1,0))|interval([(0)*],[(2,3)])", L2)
    assert CncSet.from_json(L2, A.to_json()) == A


# -- subgroups ----------------------------------------------------------------------

def test_subgroup_reduce_examples():
    A = CncSet.from_classes(Z, 6, {0: [FULL], 2: [FULL], 4: [FULL]}, reduce=False)
    assert subgroup_reduce(A) == CncSet.coset(Z, 2, 0) and subgroup_reduce(A).modulus == 2
    assert subgroup_reduce(CncSet.whole(Z)).modulus == 1
    B = CncSet.from_classes(Z, 6, {0: [FULL], 3: [FULL]}, reduce=False)
    assert subgroup_reduce(B) == CncSet.coset(Z, 3, 0)


def test_subgroup_reduce_rejects_non_subgroups():
    with pytest.raises(NotASubgroup):
        subgroup_reduce(CncSet.coset(Z, 4, 1))
    with pytest.raises(NotASubgroup):
        subgroup_reduce(S("interval([0],+inf)"))


# -- property tests against a hand-written pointwise predicate -------------------------

@st.composite
def int_sets(draw, depth=2):
    """A set expression over Z together with an independent Python predicate."""
    if depth == 0 or draw(st.booleans()):
        kind = draw(st.sampled_from(["coset", "interval", "point", "ray"]))
        if kind == "coset":
            n, a = draw(st.integers(1, 12)), draw(st.integers(-20, 20))
            return f"coset({n},{a})", lambda x, n=n, a=a: (x - a) % n == 0
        if kind == "interval":
            lo, hi = sorted(draw(st.lists(st.integers(-40, 40), min_size=2, max_size=2)))
            lc, hc = draw(st.booleans()), draw(st.booleans())
            left = f"[{lo}]" if lc else f"({lo})"
            right = f"[{hi}]" if hc else f"({hi})"
            text = f"interval({left},{right})"
            return text, lambda x, lo=lo, hi=hi, lc=lc, hc=hc: (x >= lo if lc else x > lo) and (
                x <= hi if hc else x < hi)
        if kind == "point":
            e = draw(st.integers(-40, 40))
            return f"point({e})", lambda x, e=e: x == e
        e = draw(st.integers(-40, 40))
        return f"interval([{e}],+inf)", lambda x, e=e: x >= e
    op = draw(st.sampled_from(["|", "&", "\\", "!"]))
    ta, fa = draw(int_sets(depth=depth - 1))
    if op == "!":
        return f"!({ta})", lambda x: not fa(x)
    tb, fb = draw(int_sets(depth=depth - 1))
    f = {"|": lambda x: fa(x) or fb(x), "&": lambda x: fa(x) and fb(x),
         "\\": lambda x: fa(x) and not fb(x)}[op]
    return f"({ta}){op}({tb})", f


@settings(max_examples=200, deadline=None)
@given(int_sets(depth=3))
def test_int_sets_match_predicate(pair):
    text, f = pair
    A = S(text)
    assert members(A, -120, 120) == [x for x in range(-120, 121) if f(x)]


@settings(max_examples=100, deadline=None)
@given(int_sets(), int_sets())
def test_equality_is_extensional(p, q):
    A, B = S(p[0]), S(q[0])
    same = all(p[1](x) == q[1](x) for x in range(-200, 201))
    # every set here is determined by its values on [-200, 200]
    assert (A == B) == same


@settings(max_examples=100, deadline=None)
@given(int_sets())
def test_canonical_form_is_idempotent(p):
    A = S(p[0])
    again = canonicalize(Z, A.pieces())
    assert again == A and again.modulus == A.modulus
    assert CncSet.from_json(Z, A.to_json()) == A


@settings(max_examples=100, deadline=None)
@given(int_sets(), st.integers(-30, 30))
def test_translate_and_negate(p, g):
    text, f = p
    A = S(text)
    T, N = A.translate(g), A.negate()
    for x in range(-60, 61):
        assert T.member(x) == f(x - g)
        assert N.member(x) == f(-x)


def test_ray_complements_on_rationals():
    A = CncSet.convex(Q, ConvexSet(MINUS_INF, cut_lt(Q, Fraction(1, 2))))
    B = ~A
    assert B.member(Fraction(1, 2)) and not B.member(Fraction(1, 3))
