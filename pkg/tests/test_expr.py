import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnckit.cyclic import parse_circle
from cnckit.expr import (Atom, Bin, ExprSyntaxError, ExprTypeError, Not, eval_arc, eval_cnc,
                         eval_padic_member, parse, to_text)
from cnckit.groups import parse_group
from cnckit.oracle import random_expr
from cnckit.padic import in_ball, is_nth_power

Z = parse_group("int")


def test_parse_shapes():
    assert parse("all()") == Atom("all")
    assert parse("!coset(2,0)") == Not(Atom("coset", ("2", "0")))
    e = parse("coset(2,0) | coset(3,1) | point(5)")
    assert isinstance(e, Bin) and e.op == "|" and isinstance(e.left, Bin)


@pytest.mark.parametrize("text,offset", [("!(", 2), ("coset(2", 7), ("", 0),
                                         ("coset(2,0)|coset(3,1)&all()", 21)])
def test_syntax_errors_report_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset


def test_printer_uses_canonical_spacing():
    assert to_text(parse("(coset(2,0)|coset(3,1))&!all()")) == "(coset(2,0) | coset(3,1)) & !all()"


@pytest.mark.parametrize("name", ["int", "rat", "lexint:2", "lexrat:2"])
def test_round_trip_on_random_expressions(name):
    spec = parse_group(name)
    rng = random.Random(7)
    for _ in range(200):
        e = random_expr(rng, spec)
        assert parse(to_text(e)) == e


def test_atoms_are_typed_by_structure():
    with pytest.raises(ExprTypeError):
        eval_cnc(parse("arc(0,1)"), Z)
    with pytest.raises(ExprTypeError):
        eval_cnc(parse("coset(0,1)"), Z)
    with pytest.raises(ExprTypeError):
        eval_arc(parse("interval([0],[1])"), parse_circle("dyadic-circle"))
    with pytest.raises(ExprTypeError):
        eval_padic_member(parse("arc(0,1)"), 1, 3)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(-10, 10), st.integers(-30, 30))
def test_padic_expressions(n, k, x):
    p = 3
    e = parse(f"pnpow({n}) \\ ball(0,{abs(k)})")
    want = x != 0 and is_nth_power(x, n, p) and not in_ball(x, 0, abs(k), p)
    assert eval_padic_member(e, x, p) == want
