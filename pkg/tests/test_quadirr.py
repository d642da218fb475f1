from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnckit.checks import decimal_sign
from cnckit.quadirr import QuadIrr, parse_quadirr, quad_sign, real_cmp, real_floor

SQUAREFREE = [2, 3, 5, 6, 7, 10, 11, 13, 15, 17]


def test_sign_examples():
    assert quad_sign(QuadIrr(1, 1, 2, 5)) == 1
    assert quad_sign(QuadIrr(2, -1, 1, 5)) == -1
    assert quad_sign(QuadIrr(0, 0, 1, 2)) == 0


def test_rejects_bad_radicand():
    with pytest.raises(ValueError):
        QuadIrr(1, 1, 1, 4)
    with pytest.raises(ZeroDivisionError):
        QuadIrr(1, 1, 0, 2)


def _mp(q: QuadIrr):
    with mpmath.workdps(200):
        return (mpmath.mpf(q.a) + q.b * mpmath.sqrt(q.d)) / q.c


@settings(max_examples=300)
@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9), st.integers(1, 1000),
       st.sampled_from(SQUAREFREE))
def test_sign_matches_mpmath(a, b, c, d):
    q = QuadIrr(a, b, c, d)
    v = _mp(q)
    want = 0 if (a == 0 and b == 0) else (1 if v > 0 else -1)
    assert quad_sign(q) == want


@settings(max_examples=200)
@given(st.integers(1, 10**6), st.sampled_from(SQUAREFREE), st.integers(-2, 2))
def test_near_cancellation_matches_decimal_oracle(b, d, wiggle):
    from math import isqrt

    a = -isqrt(b * b * d) + wiggle
    q = QuadIrr(a, b, 1, d)
    assert quad_sign(q) == decimal_sign(q)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(1, 100),
       st.sampled_from(SQUAREFREE))
def test_floor_brackets_value(a, b, c, d):
    q = QuadIrr(a, b, c, d)
    f = real_floor(q)
    assert real_cmp(Fraction(f), q) <= 0 < real_cmp(Fraction(f + 1), q)


@given(st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(1, 50),
       st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(1, 50),
       st.sampled_from([(2, 3), (5, 7), (2, 2), (3, 13)]))
def test_cross_radical_compare_matches_mpmath(a1, b1, c1, a2, b2, c2, ds):
    x, y = QuadIrr(a1, b1, c1, ds[0]), QuadIrr(a2, b2, c2, ds[1])
    vx, vy = _mp(x), _mp(y)
    got = real_cmp(x, y)
    if abs(vx - vy) > mpmath.mpf(10) ** -150:
        assert got == (1 if vx > vy else -1)
    else:
        assert got == 0


def test_arithmetic_stays_exact():
    phi = parse_quadirr("(1+1*sqrt(5))/2")
    assert real_cmp(phi * 2 - 1, QuadIrr(0, 1, 1, 5)) == 0
    assert (phi + phi) - phi == phi
    assert real_cmp(phi * Fraction(2, 3), QuadIrr(1, 1, 3, 5)) == 0


@pytest.mark.parametrize("text", ["(1+1*sqrt(5))/2", "(2-3*sqrt(7))/5", "sqrt(2)", "3/4"])
def test_parse_format_round_trip(text):
    from cnckit.quadirr import format_real

    x = parse_quadirr(text)
    assert real_cmp(parse_quadirr(format_real(x)), x) == 0
