from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cnckit.oracle import nth_power_oracle, power_index_oracle
from cnckit.padic import (INF, PAdicPiece, PAdicSet, ball_piece, germ_equal_at_zero, in_ball,
                          is_nth_power, power_index, pset_member, valuation)

PRIMES = [2, 3, 5, 7]
nonzero = st.fractions(-1000, 1000, max_denominator=1000).filter(lambda x: x != 0)


def test_valuation_examples():
    assert valuation(12, 2) == 2
    assert valuation(0, 3) == INF
    assert valuation(Fraction(7, 25), 5) == -2


def test_ball_examples():
    assert in_ball(10, 1, 2, 3)
    assert all(in_ball(Fraction(5, 7), Fraction(5, 7), k, 5) for k in range(-5, 30))
    assert not in_ball(1, 0, 1, 2)


def test_nth_power_examples():
    assert is_nth_power(2, 2, 7)
    assert not is_nth_power(5, 2, 7)
    assert not is_nth_power(3, 2, 2)
    assert is_nth_power(17, 2, 2)
    with pytest.raises(ValueError):
        is_nth_power(0, 2, 3)


def test_power_index_examples():
    assert power_index(2, 3) == 4
    assert power_index(2, 2) == 8
    assert all(power_index(1, p) == 1 for p in PRIMES)


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_power_index_matches_class_merge(p, n):
    assert power_index(n, p) == power_index_oracle(n, p)


@given(nonzero, nonzero, st.sampled_from(PRIMES))
def test_valuation_is_additive(x, y, p):
    assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)
    if x + y != 0:
        assert valuation(x + y, p) >= min(valuation(x, p), valuation(y, p))


@given(nonzero, st.integers(1, 6), st.sampled_from(PRIMES))
def test_nth_power_matches_root_search(x, n, p):
    assert is_nth_power(x, n, p) == nth_power_oracle(x, n, p)


@given(nonzero, st.integers(1, 6), st.sampled_from(PRIMES))
def test_nth_powers_are_nth_powers(x, n, p):
    assert is_nth_power(x ** n, n, p)


def test_set_membership():
    p = 2
    squares = PAdicSet(p, [PAdicPiece(0, 1, 2)])
    assert not pset_member(3, squares)
    assert pset_member(9, squares)
    shifted = PAdicSet(p, [PAdicPiece(5, 3, 2)])
    assert pset_member(5 + 3, shifted)
    assert not pset_member(1, PAdicSet(p, []))


def test_ball_piece_is_the_ball():
    for p in (2, 3):
        B = PAdicSet(p, [ball_piece(Fraction(1, 3), 2, p)])
        for k in range(-40, 41):
            x = Fraction(k, 5)
            assert B.member(x) == in_ball(x, Fraction(1, 3), 2, p)


def test_germ_examples():
    P2 = PAdicSet(3, [PAdicPiece(0, 1, 2)])
    assert germ_equal_at_zero(P2, P2, 10)
    B = P2.union(PAdicSet(3, [PAdicPiece(0, 2, 2, (0, 5))]))
    assert not germ_equal_at_zero(P2, B, 10)
    # the extra piece only holds at valuations >= 50, past the scanned levels
    far = P2.union(PAdicSet(3, [PAdicPiece(0, 2, 2, (0, 50))]))
    assert germ_equal_at_zero(P2, far, 10)
    assert not germ_equal_at_zero(P2, far, 60)
    empty = PAdicSet(3, [])
    # a difference only visible beyond the scanned depth is not seen
    deep = PAdicSet(3, [ball_piece(0, 10 ** 6, 3)])
    assert germ_equal_at_zero(empty, deep, 10)


def test_piece_json_round_trip():
    P = PAdicPiece(Fraction(1, 2), 3, 4, (Fraction(2), 5))
    assert PAdicPiece.from_json(P.to_json()) == P
