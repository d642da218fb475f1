"""Set expressions: AST, parser, printer and symbolic evaluation.

Grammar::

    expr := term { ("|" | "&" | "\\") term }     one operator per chain
    term := "!" term | atom | "(" expr ")"
    atom := name "(" [arg {"," arg}] ")"

Binary operators are left-associative with equal precedence; mixing two
different operators in one chain requires parentheses.  Interval endpoints are
written ``[x]`` (closed), ``(x)`` (open), ``-inf`` or ``+inf``; a trailing ``*``
inside the brackets marks a lexicographic prefix, as in ``[(1)*]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

OPS = {"|": "union", "&": "intersect", "\\": "difference"}
ATOMS = {
    "coset": (2, 2), "interval": (2, 2), "point": (1, 1), "all": (0, 0), "empty": (0, 0),
    "arc": (2, 4), "pnpow": (1, 3), "ball": (2, 2),
}


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"syntax error at offset {offset}: {msg}")
        self.offset = offset


class ExprTypeError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Not:
    arg: "Expr"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Atom, Not, Bin]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def offset(self, i=None) -> int:
        return len(self.text[: self.i if i is None else i].encode("utf-8"))

    def fail(self, msg: str, i=None):
        raise ExprSyntaxError(msg, self.offset(i))

    def ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek():
            self.fail(f"unexpected {self.peek()!r}")
        return e

    def expr(self) -> Expr:
        left = self.term()
        first = None
        while self.peek() in OPS:
            op = self.text[self.i]
            if first is None:
                first = op
            elif op != first:
                self.fail("mixed operators need parentheses")
            self.i += 1
            left = Bin(op, left, self.term())
        return left

    def term(self) -> Expr:
        c = self.peek()
        if c == "!":
            self.i += 1
            return Not(self.term())
        if c == "(":
            self.i += 1
            e = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.i += 1
            return e
        if c.isalpha():
            return self.atom()
        self.fail("expected an expression" if not c else f"unexpected {c!r}")

    def atom(self) -> Atom:
        start = self.i
        while self.i < len(self.text) and (self.text[self.i].isalnum() or self.text[self.i] == "_"):
            self.i += 1
        name = self.text[start:self.i]
        if name not in ATOMS:
            self.fail(f"unknown atom {name!r}", start)
        if self.peek() != "(":
            self.fail("expected '('")
        self.i += 1
        args = []
        if self.peek() == ")":
            self.i += 1
        else:
            while True:
                args.append(self.arg())
                c = self.peek()
                self.i += 1
                if c == ")":
                    break
                if c != ",":
                    self.fail("expected ',' or ')'", self.i - 1 if c else None)
        lo, hi = ATOMS[name]
        if not lo <= len(args) <= hi:
            self.fail(f"{name} takes {lo}..{hi} arguments, got {len(args)}", start)
        return Atom(name, tuple(args))

    def arg(self) -> str:
        self.ws()
        start, depth = self.i, 0
        while self.i < len(self.text):
            c = self.text[self.i]
            if c in "([":
                depth += 1
            elif c in ")]":
                if depth == 0:
                    break
                depth -= 1
            elif c == "," and depth == 0:
                break
            self.i += 1
        if depth:
            self.fail("unbalanced brackets")
        s = self.text[start:self.i].strip()
        if not s:
            self.fail("empty argument")
        return s


def parse(text: str) -> Expr:
    return _Parser(text).parse()


def to_text(e: Expr) -> str:
    """Print with canonical spacing; ``parse(to_text(e)) == e``."""
    if isinstance(e, Atom):
        return f"{e.name}({','.join(e.args)})"
    if isinstance(e, Not):
        inner = to_text(e.arg)
        return "!" + (f"({inner})" if isinstance(e.arg, Bin) else inner)
    left = to_text(e.left)
    if isinstance(e.left, Bin) and e.left.op != e.op:
        left = f"({left})"
    right = to_text(e.right)
    if isinstance(e.right, Bin):
        right = f"({right})"
    return f"{left} {e.op} {right}"


def atoms(e: Expr):
    if isinstance(e, Atom):
        yield e
    elif isinstance(e, Not):
        yield from atoms(e.arg)
    else:
        yield from atoms(e.left)
        yield from atoms(e.right)


# -- endpoints -------------------------------------------------------------

@dataclass(frozen=True)
class Endpoint:
    """An interval end: ``value`` is None for an infinite end."""

    value: object
    closed: bool
    prefix: bool = False


def parse_endpoint(spec, text: str) -> Endpoint:
    from .quadirr import parse_quadirr

    s = text.strip()
    if s in ("-inf", "+inf", "inf"):
        return Endpoint(None, False)
    if len(s) < 2 or s[0] not in "[(" or s[-1] not in "])":
        raise ExprTypeError(f"bad interval endpoint {text!r}")
    closed = s[0] == "["
    if closed != (s[-1] == "]"):
        raise ExprTypeError(f"mismatched brackets in endpoint {text!r}")
    body = s[1:-1].strip()
    if body.endswith("*"):
        if not spec.is_lex:
            raise ExprTypeError("prefix endpoints need a lexicographic group")
        conv = int if spec.kind == "lexint" else Fraction
        t = tuple(conv(a) for a in body[:-1].strip().strip("()").split(",") if a.strip())
        if not 1 <= len(t) < spec.k:
            raise ExprTypeError(f"prefix {body!r} must be shorter than the arity")
        return Endpoint(t, closed, True)
    try:
        return Endpoint(spec.parse(body), closed)
    except (ValueError, TypeError, ZeroDivisionError):
        pass
    if spec.is_lex or spec.kind == "int":
        raise ExprTypeError(f"endpoint {body!r} is not an element of {spec}")
    try:
        return Endpoint(parse_quadirr(body), closed)
    except (ValueError, ZeroDivisionError):
        raise ExprTypeError(f"endpoint {body!r} is not an element or real") from None


def format_endpoint(spec, ep: Endpoint, upper: bool) -> str:
    from .quadirr import format_real

    if ep.value is None:
        return "+inf" if upper else "-inf"
    if ep.prefix:
        body = "(" + ",".join(str(a) for a in ep.value) + ")*"
    elif isinstance(ep.value, (tuple, int)) or (isinstance(ep.value, Fraction) and not spec.kind == "zalpha"):
        body = spec.format(ep.value)
    else:
        body = format_real(ep.value)
    return f"[{body}]" if ep.closed else f"({body})"


def interval_convex(spec, lo: Endpoint, hi: Endpoint):
    from .cuts import MINUS_INF, PLUS_INF, ConvexSet, cut_at

    lower = MINUS_INF if lo.value is None else cut_at(spec, lo.value, not lo.closed)
    upper = PLUS_INF if hi.value is None else cut_at(spec, hi.value, hi.closed)
    return ConvexSet(lower, upper)


def _int_arg(atom: Atom, i: int) -> int:
    try:
        v = int(atom.args[i])
    except ValueError:
        raise ExprTypeError(f"{atom.name}: argument {i + 1} must be an integer") from None
    return v


# -- symbolic evaluation -----------------------------------------------------

def eval_cnc(e: Expr, spec):
    """Evaluate over an ordered group to a canonical cnc set."""
    from .cnc import CncPiece, CncSet, canonicalize
    from .cuts import ConvexSet, cut_le, cut_lt

    if isinstance(e, Not):
        return eval_cnc(e.arg, spec).complement()
    if isinstance(e, Bin):
        A, B = eval_cnc(e.left, spec), eval_cnc(e.right, spec)
        return {"|": A.union, "&": A.intersect, "\\": A.difference}[e.op](B)
    name = e.name
    try:
        if name == "all":
            return CncSet.whole(spec)
        if name == "empty":
            return CncSet.empty(spec)
        if name == "coset":
            n = _int_arg(e, 0)
            if n < 1:
                raise ExprTypeError("coset modulus must be >= 1")
            return CncSet.coset(spec, n, spec.parse(e.args[1]))
        if name == "interval":
            C = interval_convex(spec, parse_endpoint(spec, e.args[0]), parse_endpoint(spec, e.args[1]))
            return canonicalize(spec, [CncPiece(C, spec.zero, 1)])
        if name == "point":
            x = spec.parse(e.args[0])
            return canonicalize(spec, [CncPiece(ConvexSet(cut_lt(spec, x), cut_le(spec, x)), spec.zero, 1)])
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ExprTypeError):
            raise
        raise ExprTypeError(f"{name}: {exc}") from None
    raise ExprTypeError(f"atom {name!r} is not available over ordered groups")


def eval_arc(e: Expr, cspec):
    """Evaluate over a cyclically ordered group to an arc set."""
    from .cyclic import Arc, ArcSet

    if isinstance(e, Not):
        return eval_arc(e.arg, cspec).complement()
    if isinstance(e, Bin):
        A, B = eval_arc(e.left, cspec), eval_arc(e.right, cspec)
        return {"|": A.union, "&": A.intersect, "\\": A.difference}[e.op](B)
    name = e.name
    try:
        if name == "all":
            return ArcSet.whole(cspec)
        if name == "empty":
            return ArcSet.empty(cspec)
        if name == "point":
            return ArcSet.point(cspec, cspec.parse(e.args[0]))
        if name == "arc":
            p, q = cspec.parse(e.args[0]), cspec.parse(e.args[1])
            n = _int_arg(e, 2) if len(e.args) > 2 else 1
            a = cspec.parse(e.args[3]) if len(e.args) > 3 else cspec.zero
            return ArcSet.from_arcs(cspec, [Arc(p, q, n, a)])
        if name == "coset":
            n, a = _int_arg(e, 0), cspec.parse(e.args[1])
            return ArcSet.from_arcs(cspec, [Arc(cspec.zero, cspec.zero, n, a)]).union(ArcSet.point(cspec, a))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ExprTypeError):
            raise
        raise ExprTypeError(f"{name}: {exc}") from None
    raise ExprTypeError(f"atom {name!r} is not available on a circle")


def padic_atom(e: Atom, p: int):
    """The piece named by a p-adic atom."""
    from .padic import PAdicPiece, ball_piece

    try:
        if e.name == "pnpow":
            n = _int_arg(e, 0)
            a = Fraction(e.args[1]) if len(e.args) > 1 else Fraction(0)
            b = Fraction(e.args[2]) if len(e.args) > 2 else Fraction(1)
            return PAdicPiece(a, b, n)
        if e.name == "ball":
            return ball_piece(Fraction(e.args[0]), _int_arg(e, 1), p)
    except (ValueError, ZeroDivisionError) as exc:
        raise ExprTypeError(f"{e.name}: {exc}") from None
    raise ExprTypeError(f"atom {e.name!r} is not available over Q_p")


def eval_padic_member(e: Expr, x, p: int) -> bool:
    """Membership of a rational in a boolean combination of p-adic atoms."""
    if isinstance(e, Not):
        return not eval_padic_member(e.arg, x, p)
    if isinstance(e, Bin):
        a, b = eval_padic_member(e.left, x, p), eval_padic_member(e.right, x, p)
        return {"|": a or b, "&": a and b, "\\": a and not b}[e.op]
    if e.name == "all":
        return True
    if e.name == "empty":
        return False
    if e.name == "point":
        return Fraction(e.args[0]) == Fraction(x)
    return padic_atom(e, p).member(x, p)
