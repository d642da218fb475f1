from fractions import Fraction

import mpmath
from hypothesis import given, settings
from hypothesis import strategies as st

from cnckit.cyclic import (ArcSet, CoverElement, arc_boolean, arc_member, cover_add, cyclic_check,
                           equiv_mod_n, equiv_mod_n_direct, equiv_mod_n_local, lift, local_add,
                           negative, nonneg, parse_circle, project)
from cnckit.expr import eval_arc, parse

PHI = "(1+1*sqrt(5))/2"
S = parse_circle("salpha", PHI)
D = parse_circle("dyadic-circle")
ALPHAS = [PHI, "sqrt(2)", "(3-1*sqrt(7))/2"]


def frac_position(alpha_text, k):
    with mpmath.workdps(80):
        alpha = {PHI: (1 + mpmath.sqrt(5)) / 2, "sqrt(2)": mpmath.sqrt(2),
                 "(3-1*sqrt(7))/2": (3 - mpmath.sqrt(7)) / 2}[alpha_text]
        v = alpha * k
        return v - mpmath.floor(v)


def test_cyclic_check_examples():
    assert not cyclic_check(S, 1, 2, 3)
    assert cyclic_check(S, 3, 2, 1)
    assert not cyclic_check(S, 4, 4, 9)
    assert cyclic_check(D, 0, Fraction(1, 4), Fraction(1, 2))


def test_cover_add_examples():
    assert tuple(cover_add(S, CoverElement(0, 1), CoverElement(0, 1))) == (1, 2)
    assert tuple(cover_add(S, CoverElement(2, 0), CoverElement(-5, 0))) == (-3, 0)
    got = cover_add(D, CoverElement(0, Fraction(3, 4)), CoverElement(0, Fraction(1, 2)))
    assert (got.winding, got.base) == (1, Fraction(1, 4))


def test_project_and_lift():
    assert project(CoverElement(5, 7)) == 7
    assert tuple(lift(S, 0)) == (0, 0)
    for a in range(-50, 50):
        assert project(cover_add(S, lift(S, a), S.u)) == a


def test_local_add_examples():
    x = nonneg(3)
    assert local_add(S, nonneg(0), x) == x
    assert local_add(S, nonneg(1), negative(1)) == nonneg(0)
    assert local_add(S, nonneg(1), nonneg(1)) is None


def test_equiv_mod_n_examples():
    assert equiv_mod_n(S, nonneg(5), nonneg(5), 3)
    assert not equiv_mod_n(S, nonneg(2), nonneg(4), 2)
    # in the cover of the dyadic circle, 1/4 - 3/4 = -1/2 lies in 2Z[1/2]
    assert equiv_mod_n(D, nonneg(Fraction(1, 4)), nonneg(Fraction(3, 4)), 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(-40, 40), st.integers(-40, 40), st.booleans(), st.booleans(), st.integers(1, 6))
def test_two_equivalences_agree(a, b, na, nb, n):
    x = negative(a) if na and a else nonneg(a)
    y = negative(b) if nb and b else nonneg(b)
    assert equiv_mod_n_direct(S, x, y, n) == equiv_mod_n_local(S, x, y, n)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(ALPHAS), st.integers(-60, 60), st.integers(-60, 60), st.integers(-60, 60))
def test_cyclic_order_matches_high_precision(alpha, a, b, c):
    spec = parse_circle("salpha", alpha)
    pa, pb, pc = (frac_position(alpha, k) for k in (a, b, c))
    want = len({a, b, c}) == 3 and ((pa < pb < pc) or (pb < pc < pa) or (pc < pa < pb))
    assert cyclic_check(spec, a, b, c) == want


@settings(max_examples=300, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_cyclic_axioms(a, b, c, d):
    C = S.cyclic_check
    if C(a, b, c):
        assert C(b, c, a)
        assert not C(c, b, a)
        assert C(a + d, b + d, c + d)
    if C(a, b, c) and C(a, c, d):
        assert C(a, b, d)
    if len({a, b, c}) == 3:
        assert C(a, b, c) or C(c, b, a)


@settings(max_examples=200, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20),
       st.integers(-20, 20), st.integers(-20, 20))
def test_cover_is_a_group(w1, a1, w2, a2, w3, a3):
    x, y, z = CoverElement(w1, a1), CoverElement(w2, a2), CoverElement(w3, a3)
    assert cover_add(S, cover_add(S, x, y), z) == cover_add(S, x, cover_add(S, y, z))
    assert cover_add(S, x, y) == cover_add(S, y, x)
    assert cover_add(S, x, S.cover_neg(x)) == CoverElement(0, 0)
    assert S.from_h(S.to_h(x)) == x


def A(text, spec=S):
    return eval_arc(parse(text), spec)


def test_arc_examples():
    arc = A("arc(0,5)")
    assert arc_member(13, arc)
    assert (arc | ~arc) == ArcSet.whole(S)
    back = A("arc(5,0)")
    meet = arc_boolean("intersect", arc, back)
    assert [j for j in range(-200, 201) if meet.member(j)] == \
        [j for j in range(-200, 201) if arc.member(j) and back.member(j)]


@settings(max_examples=60, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 4), st.integers(0, 3),
       st.sampled_from(["|", "&", "\\"]))
def test_arc_boolean_matches_pointwise(a, b, n, r, op):
    X, Y = A(f"arc({a},{b})"), A(f"coset({n},{r})")
    Z = A(f"(arc({a},{b})){op}(coset({n},{r}))")
    f = {"|": lambda p, q: p or q, "&": lambda p, q: p and q, "\\": lambda p, q: p and not q}[op]
    for j in range(-100, 101):
        assert Z.member(j) == f(X.member(j), Y.member(j))
