"""Command-line front end.

Exit codes: 0 success, 1 a check or comparison failed, 2 usage or input error.
Output is canonical JSON (sorted keys) unless ``--format text`` is given.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .cuts import convex_to_json, format_convex
from .cyclic import CyclicSpec, parse_circle
from .equiv import EquivContext, decompose, eclass, finite_classes
from .expr import (Atom, Bin, ExprSyntaxError, ExprTypeError, eval_arc, eval_cnc, eval_padic_member,
                   padic_atom, parse)
from .groups import ConvexSubgroup, GroupSpec, parse_group
from .oracle import Window, WindowCapError, circle_window, enum_window
from .padic import (INF, PAdicPiece, PAdicSet, germ_equal_at_zero, in_ball, is_nth_power, is_prime,
                    power_index, valuation)
from .subgroups import QuotientMap, convex_subgroups, pullback, regular_subgroup


class UsageError(Exception):
    pass


# -- output -------------------------------------------------------------------

def _text(obj, indent: int = 0) -> list:
    pad = " " * indent
    lines = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{str(k):<{width}} :")
                lines.extend(_text(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k):<{width}} : {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 2))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if v == [] or v == {}:
        return "[]" if v == [] else "{}"
    return str(v)


def emit(obj, fmt: str) -> None:
    if fmt == "text":
        print("\n".join(_text(obj)))
    else:
        print(json.dumps(obj, sort_keys=True, indent=2))


# -- argument helpers -----------------------------------------------------------

def _group(args) -> GroupSpec:
    if not args.group:
        raise UsageError("this command needs --group")
    try:
        return parse_group(args.group, args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _circle(args) -> CyclicSpec:
    name = args.group or ("salpha" if args.alpha else "")
    try:
        return parse_circle(name, args.alpha)
    except ValueError as exc:
        raise UsageError(f"{exc}; use --group salpha:<alpha> or --group dyadic-circle") from None


def _element(spec, text: str):
    try:
        return spec.parse(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise UsageError(f"{text!r} is not an element of {spec}") from None


def _expr(text: str):
    return parse(text)


def _window(args, spec: GroupSpec) -> Window:
    cap = args.cap
    if args.window:
        lo, hi = args.window
        if spec.kind == "zalpha":
            from .quadirr import parse_quadirr

            try:
                lo, hi = parse_quadirr(lo), parse_quadirr(hi)
            except ValueError:
                lo, hi = spec.real_value(_element(spec, lo)), spec.real_value(_element(spec, hi))
        else:
            lo, hi = _element(spec, lo), _element(spec, hi)
        return Window(spec, lo, hi, cap if cap is not None else 8)
    if spec.kind == "int":
        return Window(spec, -20, 20)
    if spec.kind in ("rat", "dyadic"):
        return Window(spec, -5, 5, cap or 2)
    if spec.kind == "zalpha":
        return Window(spec, None, None, cap or 3)
    return Window(spec, (-2,) * spec.k, (2,) * spec.k, cap or 1)


def _fmt(spec, x) -> str:
    return spec.format(x)


# -- commands -----------------------------------------------------------------------

def cmd_normalize(args):
    spec = _group(args)
    X = eval_cnc(_expr(args.expr), spec)
    out = X.to_json()
    out["pieces"] = [f"{format_convex(spec, C)} & {r}+{X.modulus}M"
                     for r, ps in ((spec.format(r), ps) for r, ps in X.classes.items()) for C in ps]
    kind, pts = X.classify()
    out["classification"] = kind if pts is None else {"finite": [spec.format(e) for e in pts]}
    return out, 0


def cmd_member(args):
    spec = _group(args)
    X = eval_cnc(_expr(args.expr), spec)
    res = [{"element": spec.format(_element(spec, e)), "member": X.member(_element(spec, e))}
           for e in args.elements]
    return (res[0] if len(res) == 1 else res), 0


def cmd_window(args):
    spec = _group(args)
    X = eval_cnc(_expr(args.expr), spec)
    pts = enum_window(_window(args, spec))
    bits = X.bitmap(pts)
    return {"elements": len(pts), "members": [spec.format(x) for x, b in zip(pts, bits) if b],
            "bitmap": "".join("#" if b else "." for b in bits)}, 0


def cmd_decompose(args):
    spec = _group(args)
    X = eval_cnc(_expr(args.expr), spec)
    try:
        D = decompose(X, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = D.to_json(spec)
    out["reassembles"] = D.reassemble(spec) == X
    return out, 0 if out["reassembles"] else 1


def cmd_eclass(args):
    spec = _group(args)
    X = eval_cnc(_expr(args.expr), spec)
    try:
        ctx = EquivContext(X, args.n or X.modulus)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = []
    for e in args.elements:
        C = eclass(_element(spec, e), ctx)
        out.append({"element": e, "class": convex_to_json(spec, C), "text": format_convex(spec, C)})
    if args.finite:
        return {"n": ctx.n, "classes": out,
                "finite_classes": [format_convex(spec, C) for C in finite_classes(ctx)]}, 0
    return {"n": ctx.n, "classes": out}, 0


def cmd_subgroups(args):
    spec = _group(args)
    return {"group": str(spec),
            "convex_subgroups": [{"descriptor": H.descriptor, "text": str(H)} for H in convex_subgroups(spec)]}, 0


def cmd_rn(args):
    spec = _group(args)
    if args.n < 1:
        raise UsageError("n must be >= 1")
    H = regular_subgroup(spec, args.n)
    return {"group": str(spec), "n": args.n, "descriptor": H.descriptor, "text": str(H)}, 0


def cmd_pullback(args):
    dom = _group(args)
    if not dom.is_lex or not 1 <= args.prefix < dom.k:
        raise UsageError("pullback needs a lexicographic group and 1 <= --prefix < arity")
    q = QuotientMap(dom, ConvexSubgroup(dom, args.prefix))
    Y = eval_cnc(_expr(args.expr), q.codomain)
    try:
        P = pullback(q, Y)
    except NotImplementedError as exc:
        raise UsageError(str(exc)) from None
    return {"codomain": str(q.codomain), "set": P.to_json()}, 0


def _prime(args) -> int:
    if args.prime is None or not is_prime(args.prime):
        raise UsageError("p-adic commands need --prime with a prime value")
    return args.prime


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{text!r} is not a rational number") from None


def padic_set(text: str, p: int) -> PAdicSet:
    """A p-adic set from a JSON piece list or a union of atoms and atom intersections."""
    s = text.strip()
    if s.startswith("[") or s.startswith("{"):
        data = json.loads(s)
        if isinstance(data, dict):
            data = data.get("pieces", [])
        return PAdicSet(p, [PAdicPiece.from_json(d) for d in data])
    pieces = []

    def walk(e):
        if isinstance(e, Bin) and e.op == "|":
            walk(e.left)
            walk(e.right)
        elif isinstance(e, Atom):
            pieces.append(padic_atom(e, p))
        elif isinstance(e, Bin) and e.op == "&" and isinstance(e.left, Atom) and isinstance(e.right, Atom):
            pw, bl = (e.left, e.right) if e.left.name == "pnpow" else (e.right, e.left)
            if pw.name != "pnpow" or bl.name != "ball":
                raise ExprTypeError("only pnpow(...) & ball(...) can be intersected in a p-adic set")
            P = padic_atom(pw, p)
            pieces.append(PAdicPiece(P.a, P.b, P.n, (Fraction(bl.args[0]), int(bl.args[1]))))
        else:
            raise ExprTypeError("p-adic sets are unions of pnpow/ball pieces")

    walk(parse(s))
    return PAdicSet(p, pieces)


def cmd_padic(args):
    p = _prime(args)
    op = args.padic_op
    if op == "val":
        x = _rational(args.x)
        v = valuation(x, p)
        return {"x": str(x), "p": p, "valuation": "inf" if v == INF else v}, 0
    if op == "ball":
        x, c = _rational(args.x), _rational(args.c)
        return {"x": str(x), "center": str(c), "k": args.k, "p": p, "in_ball": in_ball(x, c, args.k, p)}, 0
    if op == "pow":
        x = _rational(args.x)
        if x == 0 or args.n < 1:
            raise UsageError("x must be nonzero and n >= 1")
        return {"x": str(x), "n": args.n, "p": p, "nth_power": is_nth_power(x, args.n, p)}, 0
    if op == "member":
        e = parse(args.expr)
        res = []
        for t in args.xs:
            x = _rational(t)
            if x == 0:
                raise UsageError("0 lies outside the multiplicative group")
            res.append({"x": str(x), "member": eval_padic_member(e, x, p)})
        return (res[0] if len(res) == 1 else res), 0
    if op == "germ":
        A, B = padic_set(args.a, p), padic_set(args.b, p)
        return {"p": p, "depth": args.depth, "germ_equal": germ_equal_at_zero(A, B, args.depth)}, 0
    if op == "index":
        if args.n < 1:
            raise UsageError("n must be >= 1")
        return {"p": p, "n": args.n, "index": power_index(args.n, p)}, 0
    raise UsageError(f"unknown padic command {op!r}")


def cmd_arc(args):
    cspec = _circle(args)
    A = eval_arc(_expr(args.expr), cspec)
    out = A.to_json()
    if args.elements:
        out["members"] = [{"element": e, "member": A.member(_element(cspec, e))} for e in args.elements]
    if args.radius is not None:
        pts = circle_window(cspec, args.radius)
        bits = [A.member(t) for t in pts]
        out["window"] = {"elements": len(pts), "members": [cspec.format(t) for t, b in zip(pts, bits) if b]}
    return out, 0


def cmd_check(args):
    from .checks import SUITES, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    seed = args.seed
    env = os.environ.get("CNCKIT_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"CNCKIT_SEED={env!r} is not an integer") from None
    reports = [run_suite(n, seed, args.scale) for n in names]
    out = [r.to_json() for r in reports]
    return (out[0] if len(out) == 1 else out), 0 if all(r.ok for r in reports) else 1


# -- parser -----------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--group", default=S, help="int, rat, dyadic, lexint:K, lexrat:K, z+alpha:<a>, "
                   "salpha:<a>, dyadic-circle")
    p.add_argument("--alpha", default=S, help="quadratic irrational (a+b*sqrt(d))/c for alpha groups")
    p.add_argument("--prime", type=int, default=S)
    p.add_argument("--window", nargs=2, metavar=("LO", "HI"), default=S)
    p.add_argument("--cap", type=int, default=S, help="enumeration bound for windows")
    p.add_argument("--format", choices=("json", "text"), default=S)
    p.add_argument("--seed", type=int, default=S)
    return p


DEFAULTS = {"group": None, "alpha": None, "prime": None, "window": None, "cap": None,
            "format": "json", "seed": 0}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="cnckit", parents=[common],
                                     description="Exact algebra of unary definable sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("normalize", cmd_normalize, "canonical form of a set expression")
    sp.add_argument("expr")
    sp = add("member", cmd_member, "membership of elements")
    sp.add_argument("expr")
    sp.add_argument("elements", nargs="+")
    sp = add("window", cmd_window, "members within a finite window")
    sp.add_argument("expr")
    sp = add("decompose", cmd_decompose, "decomposition into classes of the convex equivalence")
    sp.add_argument("expr")
    sp.add_argument("--n", type=int, default=None)
    sp = add("eclass", cmd_eclass, "classes of the convex equivalence")
    sp.add_argument("expr")
    sp.add_argument("elements", nargs="+")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--finite", action="store_true", help="also list the finite classes")
    add("subgroups", cmd_subgroups, "convex subgroups of the group")
    sp = add("rn", cmd_rn, "the regular subgroup R_n")
    sp.add_argument("n", type=int)
    sp = add("pullback", cmd_pullback, "preimage under the quotient by a convex subgroup")
    sp.add_argument("expr", help="set over the quotient group")
    sp.add_argument("--prefix", type=int, required=True, help="number of leading coordinates kept")
    sp = add("padic", cmd_padic, "p-adic valuation, balls, powers and sets")
    psub = sp.add_subparsers(dest="padic_op", required=True)
    q = psub.add_parser("val", parents=[common])
    q.add_argument("x")
    q = psub.add_parser("ball", parents=[common])
    q.add_argument("x")
    q.add_argument("c")
    q.add_argument("k", type=int)
    q = psub.add_parser("pow", parents=[common])
    q.add_argument("x")
    q.add_argument("n", type=int)
    q = psub.add_parser("member", parents=[common])
    q.add_argument("expr")
    q.add_argument("xs", nargs="+")
    q = psub.add_parser("germ", parents=[common])
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--depth", type=int, default=20)
    q = psub.add_parser("index", parents=[common])
    q.add_argument("n", type=int)
    sp = add("arc", cmd_arc, "arc sets on a cyclically ordered group")
    sp.add_argument("expr")
    sp.add_argument("elements", nargs="*")
    sp.add_argument("--radius", type=int, default=None, help="list members j with |j| <= radius")
    sp = add("check", cmd_check, "run self-check suites against brute-force oracles")
    sp.add_argument("suite", nargs="?", default="all")
    sp.add_argument("--scale", type=float, default=0.05, help="fraction of the full case counts")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for k, v in DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        out, code = args.func(args)
    except ExprSyntaxError as exc:
        print(json.dumps({"error": str(exc), "offset": exc.offset}, sort_keys=True), file=sys.stderr)
        return 2
    except (UsageError, ExprTypeError, WindowCapError) as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return 2
    emit(out, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
