import random
from fractions import Fraction

import pytest

from cnckit.checks import ORDERED_SPECS, boolean_window
from cnckit.expr import eval_cnc
from cnckit.groups import parse_group
from cnckit.oracle import (Window, WindowCapError, WindowEvaluator, enum_window, ordered_predicate,
                           random_expr)


def test_integer_window():
    assert enum_window(Window(parse_group("int"), -2, 2)) == [-2, -1, 0, 1, 2]
    with pytest.raises(WindowCapError):
        enum_window(Window(parse_group("int"), 0, 100, limit=10))


def test_rational_window_is_a_grid():
    pts = enum_window(Window(parse_group("rat"), 0, 1, 3))
    assert pts == [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]
    dy = enum_window(Window(parse_group("dyadic"), 0, 1, 4))
    assert all(x.denominator in (1, 2, 4) for x in dy) and len(dy) == 5


def test_lex_window_is_sorted_box():
    L2 = parse_group("lexint:2")
    pts = enum_window(Window(L2, (-1, -1), (1, 1)))
    assert len(pts) == 9 and pts == sorted(pts)


@pytest.mark.parametrize("name", ORDERED_SPECS)
def test_window_evaluator_matches_plain_predicate(name):
    spec = parse_group(name)
    pts = enum_window(boolean_window(spec))
    fast = WindowEvaluator(spec, pts)
    rng = random.Random(3)
    for _ in range(15):
        e = random_expr(rng, spec)
        f = ordered_predicate(spec, e)
        assert fast(e) == [f(x) for x in pts]


@pytest.mark.parametrize("name", ORDERED_SPECS)
def test_symbolic_evaluation_matches_window(name):
    spec = parse_group(name)
    pts = enum_window(boolean_window(spec))
    fast = WindowEvaluator(spec, pts)
    rng = random.Random(11)
    for _ in range(10):
        e = random_expr(rng, spec)
        assert eval_cnc(e, spec).bitmap(pts) == fast(e)
