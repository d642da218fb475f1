"""Named self-check suites comparing the symbolic engine with brute-force oracles.

Each suite returns a :class:`Report`; ``run_suite(name, seed, scale)`` runs one by
name.  ``scale=1.0`` gives the full case counts used by the acceptance tests;
the CLI defaults to a smaller scale.
"""
from __future__ import annotations

import math
import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from typing import Callable

from .cnc import CncSet, NotASubgroup, canonicalize, subgroup_reduce
from .cuts import FULL
from .cyclic import (CoverElement, LocalElement, arc_boolean, circle_index, cover_index,
                     equiv_mod_n_direct, equiv_mod_n_local, iota, local_add, local_le, negative,
                     nonneg, parse_circle)
from .equiv import EquivContext, decompose, eclass, finite_classes, related
from .expr import eval_arc, eval_cnc, to_text
from .groups import ConvexSubgroup, GroupSpec, parse_group
from .oracle import (Window, WindowEvaluator, _dense_witness, circle_predicate, circle_window, enum_window,
                     nth_power_oracle, ordered_predicate, power_index_oracle, random_arc_expr,
                     random_expr, related_oracle, rn_oracle)
from .padic import is_nth_power, power_index, valuation
from .quadirr import QuadIrr, quad_sign
from .subgroups import QuotientMap, pullback, regular_subgroup

PHI = "(1+1*sqrt(5))/2"
ORDERED_SPECS = ("int", "rat", "lexint:2", "lexrat:2", f"z+alpha:{PHI}")
ALPHAS = (PHI, "(0+1*sqrt(2))/1", "(0+1*sqrt(3))/1", "(1+1*sqrt(13))/2", "(0+1*sqrt(7))/3")


@dataclass
class Report:
    suite: str
    cases: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)
    keep: int = 20

    def case(self, ok: bool, input, expected, got) -> bool:
        self.cases += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < self.keep:
                self.failures.append({"input": input, "expected": expected, "got": got})
        return ok

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {"suite": self.suite, "cases": self.cases, "failed": self.failed, "failures": self.failures}


def _n(count: int, scale: float) -> int:
    return max(1, round(count * scale))


def _text(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(str(c) for c in x) + ")"
    return str(x)


def boolean_window(spec: GroupSpec) -> Window:
    """A window of at least 200 elements spanning the random generator's range."""
    kind = spec.kind
    if kind == "int":
        return Window(spec, -110, 110)
    if kind == "rat":
        return Window(spec, -21, 21, 4)
    if kind == "dyadic":
        return Window(spec, -21, 21, 8)
    if kind == "lexint":
        return Window(spec, (-7,) * (spec.k - 1) + (-8,), (7,) * (spec.k - 1) + (8,))
    if kind == "lexrat":
        return Window(spec, (-4,) * spec.k, (4,) * spec.k, 2)
    return Window(spec, -12, 12, 8)


def _bits(f: Callable, pts) -> list:
    return [bool(f(x)) for x in pts]


def _first_diff(pts, want, got):
    for x, a, b in zip(pts, want, got):
        if a != b:
            return _text(x), a, b
    return None


OPS = {
    "union": (lambda A, B: A.union(B), lambda a, b: a or b),
    "intersect": (lambda A, B: A.intersect(B), lambda a, b: a and b),
    "difference": (lambda A, B: A.difference(B), lambda a, b: a and not b),
    "complement": (lambda A, B: A.complement(), lambda a, b: not a),
}


def check_boolean(seed: int = 0, scale: float = 1.0, specs=ORDERED_SPECS) -> Report:
    """Each boolean operation on canonical sets matches pointwise evaluation on a window."""
    rep = Report("boolean")
    rng = random.Random(seed)
    for name in specs:
        spec = parse_group(name)
        pts = enum_window(boolean_window(spec))
        oracle = WindowEvaluator(spec, pts)
        for _ in range(_n(1000, scale)):
            eA, eB = random_expr(rng, spec), random_expr(rng, spec)
            A, B = eval_cnc(eA, spec), eval_cnc(eB, spec)
            bA, bB = oracle(eA), oracle(eB)
            for op, (sym, pw) in OPS.items():
                R = sym(A, B)
                want = [pw(a, b) for a, b in zip(bA, bB)]
                got = R.bitmap(pts)
                d = _first_diff(pts, want, got)
                rep.case(d is None, {"group": name, "op": op, "A": to_text(eA), "B": to_text(eB)},
                         None if d is None else {"element": d[0], "member": d[1]},
                         None if d is None else {"element": d[0], "member": d[2]})
    return rep


def canonical_windows(spec: GroupSpec) -> list:
    kind = spec.kind
    if kind == "int":
        w = Window(spec, -60, 60)
    elif kind == "rat":
        w = Window(spec, -21, 21, 8)
    elif kind == "lexint":
        w = Window(spec, (-8,) * (spec.k - 1) + (-12,), (8,) * (spec.k - 1) + (12,))
    elif kind == "lexrat":
        w = Window(spec, (-6,) * spec.k, (6,) * spec.k, 4)
    elif kind == "dyadic":
        w = Window(spec, -21, 21, 16)
    else:
        w = Window(spec, -9, 9, 30)
    pts = enum_window(w)
    k = len(pts) // 3
    return [pts[:k], pts[k:2 * k], pts[2 * k:]]


def _presentations(rng: random.Random, spec: GroupSpec, A: CncSet, e) -> CncSet:
    """Another presentation of the same set."""
    k = rng.randrange(4)
    if k == 0:
        C = eval_cnc(random_expr(rng, spec, irrational=False), spec)
        return (A | C) - (C - A)
    if k == 1:
        return ~~A
    if k == 2:
        m = A.modulus * rng.choice((2, 3))
        return CncSet.from_classes(spec, m, A.refine(m))
    return canonicalize(spec, A.pieces() + A.pieces()[: rng.randrange(len(A.pieces()) + 1)])


def check_canonical(seed: int = 0, scale: float = 1.0, specs=ORDERED_SPECS) -> Report:
    """Canonical form is idempotent, and structural equality matches equality on windows."""
    rep = Report("canonical")
    rng = random.Random(seed)
    for name in specs:
        spec = parse_group(name)
        windows = canonical_windows(spec)
        for _ in range(_n(500, scale)):
            eA = random_expr(rng, spec, irrational=False)
            A = eval_cnc(eA, spec)
            again = canonicalize(spec, A.pieces())
            rep.case(again == A and CncSet.from_json(spec, A.to_json()) == A,
                     {"group": name, "A": to_text(eA), "check": "idempotent"}, repr(A), repr(again))
            if rng.random() < 0.5:
                B, eB = _presentations(rng, spec, A, eA), "alternative presentation"
            else:
                e = random_expr(rng, spec, irrational=False)
                B, eB = eval_cnc(e, spec), to_text(e)
            same_bits = all(A.bitmap(w) == B.bitmap(w) for w in windows)
            rep.case((A == B) == same_bits, {"group": name, "A": to_text(eA), "B": eB},
                     {"equal_on_windows": same_bits}, {"structurally_equal": A == B})
    return rep


def check_subgroups(seed: int = 0, scale: float = 1.0) -> Report:
    """Subgroups of Z given as coset unions reduce to their true modulus."""
    rep = Report("subgroup")
    rng = random.Random(seed)
    Z = parse_group("int")
    window = range(-100, 101)
    for _ in range(_n(200, scale)):
        m = rng.randint(1, 36)
        d = rng.choice([t for t in range(1, m + 1) if m % t == 0])
        shift = 0 if m == 1 or rng.random() < 0.8 else rng.randrange(1, m)
        residues = sorted({(shift + d * i) % m for i in range(m // d)})
        reps = [r + m * rng.randint(-3, 3) for r in residues]
        A = CncSet.from_classes(Z, m, {r: [FULL] for r in reps}, reduce=False)
        members = [x for x in window if A.member(x)]
        g = 0
        for x in members:
            g = math.gcd(g, x - members[0])
        is_group = 0 in members
        label = {"modulus": m, "residues": reps}
        try:
            got = subgroup_reduce(A)
        except NotASubgroup:
            rep.case(not is_group, label, g if is_group else "not a subgroup", "not a subgroup")
            continue
        rep.case(is_group and got.modulus == g and got == CncSet.coset(Z, g, 0),
                 label, g if is_group else "not a subgroup", got.modulus)
    return rep


RN_SPECS = ("int", "rat", "dyadic", f"z+alpha:{PHI}", "lexint:2", "lexint:3", "lexrat:2")


def _rn_box(spec: GroupSpec, n: int):
    """A box for the definitional test and the inner part on which it is conclusive."""
    kind = spec.kind
    if kind == "int":
        pts = list(range(-30, 31))
        return pts, pts
    if kind in ("rat", "dyadic"):
        pts = enum_window(Window(spec, -3, 3, 4))
        return pts, pts
    if kind == "zalpha":
        pts = enum_window(Window(spec, -3, 3, 2))
        return pts, pts
    if kind == "lexint":
        B = n + 4
        pts = enum_window(Window(spec, (-2,) * (spec.k - 1) + (-B,), (2,) * (spec.k - 1) + (B,)))
        inner = [x for x in pts if abs(x[-1]) <= B - n]
        return pts, inner
    pts = enum_window(Window(spec, (-2,) * spec.k, (2,) * spec.k, 2))
    return pts, pts


def check_rn(seed: int = 0, scale: float = 1.0) -> Report:
    """R_n from the closed form agrees with the definition; intervals of R_n meet a + nR_n."""
    rep = Report("rn")
    rng = random.Random(seed)
    for name in RN_SPECS:
        spec = parse_group(name)
        for n in range(1, 13):
            H = regular_subgroup(spec, n)
            pts, inner = _rn_box(spec, n)
            defn = rn_oracle(spec, n, pts)
            for a in inner:
                rep.case(defn[a] == H.contains(a), {"group": name, "n": n, "a": _text(a)},
                         defn[a], H.contains(a))
    samples = _n(1000, scale)
    for i in range(samples):
        name = RN_SPECS[i % len(RN_SPECS)]
        spec = parse_group(name)
        n = rng.randint(1, 12)
        H = regular_subgroup(spec, n)
        a = _rn_sample(rng, spec, H)
        if spec.is_discrete:
            s = _rn_sample(rng, spec, H)
            run = [spec.add(s, spec.scale(spec.unit, t)) for t in range(n)]
            ok = all(H.contains(x) for x in run) and any(spec.in_nM(spec.sub(x, a), n) for x in run)
            label = {"group": name, "n": n, "a": _text(a), "interval": [_text(run[0]), _text(run[-1])]}
        else:
            x, y = sorted((_rn_sample(rng, spec, H), _rn_sample(rng, spec, H)), key=spec.sort_key())
            if spec.compare(x, y) == 0:
                y = spec.add(x, spec.unit if spec.unit is not None else _tiny(spec))
            w = _dense_witness(spec, n, spec.sub(x, a), spec.sub(y, a))
            ok = w is not None
            label = {"group": name, "n": n, "a": _text(a), "interval": [_text(x), _text(y)]}
        rep.case(ok, label, "meets a + nR_n", ok)
    return rep


def _tiny(spec: GroupSpec):
    if spec.kind == "zalpha":
        return (-1, 1)
    if spec.is_lex:
        return spec.element((0,) * (spec.k - 1) + (1,))
    return Fraction(1, 2)


def _rn_sample(rng: random.Random, spec: GroupSpec, H: ConvexSubgroup):
    kind = spec.kind
    if kind == "int":
        return rng.randint(-50, 50)
    if kind in ("rat", "dyadic"):
        return Fraction(rng.randint(-50, 50), rng.choice((1, 2, 4)))
    if kind == "zalpha":
        return (rng.randint(-9, 9), rng.randint(-9, 9))
    conv = (lambda: rng.randint(-9, 9)) if kind == "lexint" else (lambda: Fraction(rng.randint(-9, 9), 2))
    t = [conv() for _ in range(spec.k)]
    for i in range(H.j):
        t[i] = 0
    return spec.element(tuple(t))


DECOMPOSE_SPECS = ORDERED_SPECS


def _equiv_samples(spec: GroupSpec):
    kind = spec.kind
    if kind == "int":
        return list(range(-30, 31))
    if kind == "rat":
        return enum_window(Window(spec, -22, 22, 2))
    if kind == "lexint":
        return enum_window(Window(spec, (-3, -12), (3, 12)))
    if kind == "lexrat":
        return enum_window(Window(spec, (-3, -7), (3, 7), 1))
    return enum_window(Window(spec, -9, 9, 6))


def _int_related_oracle(spec, X, n, a, b):
    lo, hi = min(a, b), max(a, b)
    below = range(lo - n - 4, lo)
    above = range(hi + 1, hi + n + 5)
    return related_oracle(spec, X.member, a, b, n, below, above,
                          lambda s, t: range(s + 1, t), lambda s, t: True)


def _lexint_related_oracle(spec, X, n, a, b):
    lo, hi = min(a, b), max(a, b)
    below = [(lo[0], lo[1] - i) for i in range(1, n + 5)]
    above = [(hi[0], hi[1] + i) for i in range(1, n + 5)]

    def inside(s, t):
        if s[0] != t[0]:
            raise ValueError("open interval spans slabs")
        return [(s[0], m) for m in range(s[1] + 1, t[1])]

    # R_n is the slab {0} x Z (checked against its definition by the rn suite)
    return related_oracle(spec, X.member, a, b, n, below, above, inside, lambda s, t: s[0] == t[0])


# random rational sets have endpoints with denominators dividing 12, so the
# multiples of 1/48 meet every piece, gap and point between them
_RAT_GRID = [Fraction(k, 48) for k in range(-48 * 26, 48 * 26 + 1)]


def _rat_related_oracle(spec, X, n, a, b):
    lo, hi = min(a, b), max(a, b)
    deltas = [Fraction(1, 16), Fraction(1, 8), Fraction(1, 2), Fraction(2)]
    memo: dict = {}

    def member(x):
        m = memo.get(x)
        if m is None:
            m = memo[x] = X.member(x)
        return m

    def inside(s, t):
        return _RAT_GRID[bisect_right(_RAT_GRID, s):bisect_left(_RAT_GRID, t)]

    return related_oracle(spec, member, a, b, n, [lo - d for d in deltas], [hi + d for d in deltas],
                          inside, lambda s, t: True)


_E_ORACLES = {"int": _int_related_oracle, "lexint": _lexint_related_oracle, "rat": _rat_related_oracle}


def check_decompose(seed: int = 0, scale: float = 1.0, specs=DECOMPOSE_SPECS) -> Report:
    """Decompositions reassemble; E is an invariant convex equivalence relation."""
    rep = Report("decompose")
    rng = random.Random(seed)
    for name in specs:
        spec = parse_group(name)
        samples = _equiv_samples(spec)
        for i in range(_n(300, scale)):
            e = random_expr(rng, spec, irrational=False)
            X = eval_cnc(e, spec)
            label = {"group": name, "X": to_text(e)}
            D = decompose(X)
            back = D.reassemble(spec)
            rep.case(back == X, dict(label, check="reassemble"), repr(X), repr(back))
            n = D.n
            if spec.kind == "lexint" and n == 1:
                n = 2
            ctx = EquivContext(X, n)
            _equiv_properties(rep, rng, spec, X, ctx, samples, label)
            if i % 3 == 0:
                _finite_classes(rep, spec, ctx, samples, label)
            oracle = _E_ORACLES.get(spec.kind)
            if oracle is not None and i % 3 == 0:
                for _ in range(4):
                    a, b = rng.choice(samples), rng.choice(samples)
                    if spec.kind == "lexint":
                        b = (a[0], b[1])
                    want = oracle(spec, X, n, a, b)
                    got = related(a, b, ctx)
                    rep.case(want == got, dict(label, check="definition", a=_text(a), b=_text(b), n=n),
                             want, got)
    return rep


def _equiv_properties(rep, rng, spec, X, ctx, samples, label):
    n = ctx.n
    a, b, c = (rng.choice(samples) for _ in range(3))
    if spec.kind == "lexint" and rng.random() < 0.8:
        b, c = (a[0], b[1]), (a[0], c[1])
    a, b, c = spec.sorted([a, b, c])
    ab, bc, ac = related(a, b, ctx), related(b, c, ctx), related(a, c, ctx)
    rep.case(related(a, a, ctx), dict(label, check="reflexive", a=_text(a)), True, False)
    rep.case(ab == related(b, a, ctx), dict(label, check="symmetric", a=_text(a), b=_text(b)), ab, not ab)
    rep.case(not (ab and bc) or ac, dict(label, check="transitive", triple=[_text(a), _text(b), _text(c)]),
             True, ac)
    rep.case(not ac or (ab and bc), dict(label, check="convex", triple=[_text(a), _text(b), _text(c)]),
             True, [ab, bc])
    E = eclass(a, ctx)
    from .cuts import convex_member

    rep.case(convex_member(spec, c, E) == ac, dict(label, check="eclass", a=_text(a), c=_text(c)),
             ac, not ac)
    g = rng.choice(samples)
    T = EquivContext(X.translate(g), n)
    moved = related(spec.add(a, g), spec.add(c, g), T)
    rep.case(moved == ac, dict(label, check="translation", g=_text(g), a=_text(a), b=_text(c)), ac, moved)
    R = EquivContext(X.negate(), n)
    flipped = related(spec.neg(a), spec.neg(c), R)
    rep.case(flipped == ac, dict(label, check="reflection", a=_text(a), b=_text(c)), ac, flipped)


def _finite_classes(rep, spec, ctx, samples, label):
    from .cnc import coset_points
    from .cuts import convex_member

    F = finite_classes(ctx)
    rep.case(all(coset_points(spec, C, spec.zero, 1) is not None for C in F),
             dict(label, check="finite classes are finite"), True, False)
    for x in samples[:: max(1, len(samples) // 40)]:
        E = eclass(x, ctx)
        fin = coset_points(spec, E, spec.zero, 1) is not None
        covered = any(convex_member(spec, x, C) for C in F)
        rep.case(fin == covered, dict(label, check="finite classes complete", x=_text(x)), fin, covered)


PULLBACKS = (("lexint:2", 1), ("lexrat:3", 1), ("lexrat:3", 2))


def _pullback_box(spec: GroupSpec, j: int) -> list:
    if spec.kind == "lexint":
        return enum_window(Window(spec, (-22, -2), (22, 2)))
    if j == 1:
        return enum_window(Window(spec, (-21, -1, -1), (21, 1, 1), 2))
    return enum_window(Window(spec, (-4, -4, -1), (4, 4, 1), 2))


def check_pullback(seed: int = 0, scale: float = 1.0) -> Report:
    """Preimages under lexicographic quotient maps match the pointwise preimage."""
    rep = Report("pullback")
    rng = random.Random(seed)
    per_domain = {"lexint:2": 1.0, "lexrat:3": 0.5}
    for name, j in PULLBACKS:
        dom = parse_group(name)
        q = QuotientMap(dom, ConvexSubgroup(dom, j))
        cod = q.codomain
        pts = _pullback_box(dom, j)
        for _ in range(_n(200 * per_domain[name], scale)):
            e = random_expr(rng, cod, irrational=False)
            Y = eval_cnc(e, cod)
            P = pullback(q, Y)
            f = ordered_predicate(cod, e)
            want = [f(x[0] if j == 1 else cod.element(x[:j])) for x in pts]
            got = P.bitmap(pts)
            d = _first_diff(pts, want, got)
            rep.case(d is None, {"domain": name, "prefix": j, "Y": to_text(e)},
                     None if d is None else {"element": d[0], "member": d[1]},
                     None if d is None else {"element": d[0], "member": d[2]})
    return rep


def _circles():
    out = [parse_circle("salpha", a) for a in ALPHAS]
    out.append(parse_circle("dyadic-circle"))
    return out


def _axioms(rep: Report, cspec, pts: list, rng: random.Random, fourth: int):
    m = len(pts)
    C = [[[False] * m for _ in range(m)] for _ in range(m)]
    for i, a in enumerate(pts):
        for j, b in enumerate(pts):
            row = C[i][j]
            for k, c in enumerate(pts):
                row[k] = cspec.cyclic_check(a, b, c)
    name = str(cspec)
    shifts = [rng.choice(pts) for _ in range(3)]
    for i in range(m):
        for j in range(m):
            for k in range(m):
                s = C[i][j][k]
                ok = (not s or C[j][k][i]) and not (s and C[k][j][i])
                if i != j and j != k and i != k:
                    ok = ok and (s or C[k][j][i])
                for _ in range(fourth):
                    l = rng.randrange(m)
                    if s and C[i][k][l] and not C[i][j][l]:
                        ok = False
                if not ok:
                    rep.case(False, {"circle": name, "triple": [str(pts[i]), str(pts[j]), str(pts[k])]},
                             "axioms 1-4 hold", "violated")
    rep.cases += m ** 3
    for g in shifts:
        for _ in range(2000):
            a, b, c = (rng.choice(pts) for _ in range(3))
            moved = cspec.cyclic_check(cspec.add(a, g), cspec.add(b, g), cspec.add(c, g))
            rep.case(moved == cspec.cyclic_check(a, b, c),
                     {"circle": name, "triple": [str(a), str(b), str(c)], "shift": str(g)},
                     "invariant under translation", moved)


def _circle_sample(rng: random.Random, cspec):
    if cspec.kind == "salpha":
        return rng.randint(-60, 60)
    return cspec.element(Fraction(rng.randrange(1 << 8), 1 << rng.randint(0, 8)))


def _local_sample(rng, cspec) -> LocalElement:
    a = _circle_sample(rng, cspec)
    return negative(a) if a != cspec.zero and rng.random() < 0.5 else nonneg(a)


def check_cyclic(seed: int = 0, scale: float = 1.0) -> Report:
    """Cyclic order axioms, the cover group, the local group and the index bound."""
    rep = Report("cyclic")
    rng = random.Random(seed)
    size = max(6, round(100 * min(1.0, scale) ** (1 / 3)))
    for cspec in _circles():
        name = str(cspec)
        if cspec.kind == "salpha":
            pts = list(range(-(size // 2), size - size // 2))
        else:
            pts = [cspec.element(Fraction(k, 128)) for k in range(size)]
        _axioms(rep, cspec, pts, rng, fourth=2)
        H = cspec.cover_group

        def cov():
            return CoverElement(rng.randint(-3, 3), _circle_sample(rng, cspec))

        z = CoverElement(0, cspec.zero)
        for _ in range(_n(300, scale)):
            x, y, w = cov(), cov(), cov()
            add = cspec.cover_add
            ok = (add(add(x, y), w) == add(x, add(y, w)) and add(x, y) == add(y, x)
                  and add(x, z) == x and add(x, cspec.cover_neg(x)) == z)
            rep.case(ok, {"circle": name, "check": "cover group", "x": list(x), "y": list(y), "w": list(w)},
                     True, ok)
            hx, hy = cspec.to_h(x), cspec.to_h(y)
            ok = cspec.to_h(add(x, y)) == H.add(hx, hy) and cspec.from_h(hx) == x
            ok = ok and (cspec.cover_lt(x, y) == (H.compare(hx, hy) < 0))
            rep.case(ok, {"circle": name, "check": "cover embedding", "x": list(x), "y": list(y)}, True, ok)
            k = rng.randint(-5, 5)
            ku = CoverElement(k, cspec.zero)
            back = add(cspec.lift(x.base), ku)
            ok = back.base == x.base and (x.base == cspec.zero) == (cspec.lift(x.base) == z)
            rep.case(ok, {"circle": name, "check": "kernel", "x": list(x), "k": k}, True, ok)
        for _ in range(_n(300, scale)):
            x, y = _local_sample(rng, cspec), _local_sample(rng, cspec)
            s = local_add(cspec, x, y)
            ix, iy = iota(cspec, x), iota(cspec, y)
            total = H.add(ix, iy)
            inside = H.compare(H.neg(_u(cspec)), total) < 0 and H.compare(total, _u(cspec)) < 0
            ok = (s is None) == (not inside) and (s is None or iota(cspec, s) == total)
            ok = ok and local_le(cspec, x, y) == (H.compare(ix, iy) <= 0)
            rep.case(ok, {"circle": name, "check": "iota", "x": repr(x), "y": repr(y)}, True, ok)
        for _ in range(_n(10_000 // 6, scale)):
            x, y = _local_sample(rng, cspec), _local_sample(rng, cspec)
            n = rng.randint(1, 6)
            a, b = equiv_mod_n_direct(cspec, x, y, n), equiv_mod_n_local(cspec, x, y, n)
            rep.case(a == b, {"circle": name, "check": "equiv", "x": repr(x), "y": repr(y), "n": n}, a, b)
        for n in range(1, 11):
            h, m = cover_index(cspec, n), circle_index(cspec, n)
            rep.case(h <= n * m, {"circle": name, "check": "index bound", "n": n},
                     f"|H/nH| <= {n * m}", h)
    return rep


def _u(cspec):
    return cspec.to_h(cspec.u)


def check_arcs(seed: int = 0, scale: float = 1.0) -> Report:
    """Arc-set boolean operations match pointwise evaluation for |j| <= 200."""
    rep = Report("arc")
    rng = random.Random(seed)
    cspec = parse_circle("salpha", PHI)
    pts = circle_window(cspec, 200)
    for _ in range(_n(300, scale)):
        eA, eB = random_arc_expr(rng, cspec), random_arc_expr(rng, cspec)
        A, B = eval_arc(eA, cspec), eval_arc(eB, cspec)
        bA, bB = _bits(circle_predicate(cspec, eA), pts), _bits(circle_predicate(cspec, eB), pts)
        for op, (_, pw) in OPS.items():
            R = arc_boolean(op, A, None if op == "complement" else B)
            want = [pw(a, b) for a, b in zip(bA, bB)]
            got = _bits(R.member, pts)
            d = _first_diff(pts, want, got)
            rep.case(d is None, {"op": op, "A": to_text(eA), "B": to_text(eB)},
                     None if d is None else {"element": d[0], "member": d[1]},
                     None if d is None else {"element": d[0], "member": d[2]})
    return rep


def check_padic(seed: int = 0, scale: float = 1.0) -> Report:
    """n-th powers against a brute-force congruence search; indices by class merging."""
    rep = Report("padic")
    rng = random.Random(seed)
    for _ in range(_n(10_000, scale)):
        x = Fraction(rng.choice((1, -1)) * rng.randint(1, 1000), rng.randint(1, 1000))
        for p in (2, 3, 5, 7):
            for n in range(1, 7):
                a, b = is_nth_power(x, n, p), nth_power_oracle(x, n, p)
                if a != b:
                    rep.case(False, {"x": str(x), "n": n, "p": p}, b, a)
        rep.cases += 24
    for _ in range(_n(2000, scale)):
        x = Fraction(rng.randint(-1000, 1000) or 1, rng.randint(1, 1000))
        y = Fraction(rng.randint(-1000, 1000) or 1, rng.randint(1, 1000))
        p = rng.choice((2, 3, 5, 7))
        ok = valuation(x * y, p) == valuation(x, p) + valuation(y, p)
        ok = ok and (x + y == 0 or valuation(x + y, p) >= min(valuation(x, p), valuation(y, p)))
        rep.case(ok, {"x": str(x), "y": str(y), "p": p, "check": "valuation"}, True, ok)
    for p, n in ((3, 2), (2, 2), (2, 3), (3, 3), (5, 2), (7, 3)):
        a, b = power_index(n, p), power_index_oracle(n, p)
        rep.case(a == b, {"p": p, "n": n, "check": "index"}, b, a)
    return rep


def _interval_sign(q: QuadIrr, digits: int) -> int:
    """Sign of (a + b*sqrt(d))/c from outward-rounded decimal bounds; 0 when undecided."""
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_FLOOR
        lo_root = Decimal(q.d).sqrt()
        ctx.rounding = ROUND_CEILING
        hi_root = Decimal(q.d).sqrt()
        ends = []
        for r in (lo_root, hi_root):
            ctx.rounding = ROUND_FLOOR
            lo = Decimal(q.a) + Decimal(q.b) * r
            ctx.rounding = ROUND_CEILING
            hi = Decimal(q.a) + Decimal(q.b) * r
            ends += [lo, hi]
    lo, hi = min(ends), max(ends)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return 0


def decimal_sign(q: QuadIrr) -> int:
    """Interval evaluation at 64 digits, escalating precision when the interval straddles 0."""
    if q.b == 0:
        return (q.a > 0) - (q.a < 0)
    digits = 64
    while digits <= 4096:
        s = _interval_sign(q, digits)
        if s:
            return s
        digits *= 2
    return 0


def _frac_position(alpha: QuadIrr, k: int, digits: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = digits + 20
        v = (Decimal(alpha.a) + Decimal(alpha.b) * Decimal(alpha.d).sqrt()) / Decimal(alpha.c) * k
        return v - v.to_integral_value(rounding=ROUND_FLOOR)


def float_circle_oracle(alpha: QuadIrr, ks, digits: int = 64) -> dict:
    """Fractional parts of k*alpha at high precision, recomputed more finely when two are too close."""
    ks = sorted(set(ks))
    while True:
        pos = {k: _frac_position(alpha, k, digits) for k in ks}
        order = sorted(ks, key=pos.get)
        eps = Decimal(10) ** (-(digits - 10))
        if all(pos[b] - pos[a] > eps for a, b in zip(order, order[1:])):
            return pos
        digits *= 2


def check_quadirr(seed: int = 0, scale: float = 1.0) -> Report:
    """Exact signs and circle positions against high-precision decimal evaluation."""
    rep = Report("quadirr")
    rng = random.Random(seed)
    for i in range(_n(10_000, scale)):
        d = rng.choice((2, 3, 5, 6, 7, 10, 11, 13))
        b = rng.randint(-10 ** 6, 10 ** 6)
        if i % 4 == 0:
            # near-cancellation: a close to -b*sqrt(d)
            from math import isqrt

            a = -isqrt(b * b * d) * (1 if b > 0 else -1) + rng.randint(-1, 1)
        else:
            a = rng.randint(-10 ** 6, 10 ** 6)
        q = QuadIrr(a, b, rng.randint(1, 50), d)
        got, want = quad_sign(q), decimal_sign(q)
        rep.case(got == want, {"a": q.a, "b": q.b, "c": q.c, "d": q.d}, want, got)
    ks = list(range(-50, 51))
    for src in ALPHAS[: max(1, min(3, round(3 * scale)))]:
        cspec = parse_circle("salpha", src)
        pos = float_circle_oracle(cspec.alpha, ks)
        rank = {k: r for r, k in enumerate(sorted(ks, key=pos.get))}
        bad = 0
        for a in ks:
            ra = rank[a]
            for b in ks:
                rb = rank[b]
                for c in ks:
                    rc = rank[c]
                    want = (ra < rb < rc) or (rb < rc < ra) or (rc < ra < rb)
                    if cspec.cyclic_check(a, b, c) != want:
                        bad += 1
                        if bad <= rep.keep:
                            rep.failures.append({"input": {"alpha": src, "triple": [a, b, c]},
                                                 "expected": want, "got": not want})
        rep.cases += len(ks) ** 3
        rep.failed += bad
    return rep


def check_examples(seed: int = 0, scale: float = 1.0) -> Report:
    """Worked examples with independently derived values."""
    from .cyclic import cover_add
    from .equiv import EquivContext as Ctx

    rep = Report("examples")
    Z = parse_group("int")
    A = eval_cnc(_parse("coset(4,0)|coset(4,2)"), Z)
    rep.case(A == CncSet.coset(Z, 2, 0), "coset(4,0)|coset(4,2)", "2Z", repr(A))
    Zphi = parse_group(f"z+alpha:{PHI}")
    got = eval_cnc(_parse("coset(2,0)"), Zphi).member((1, 1))
    rep.case(got is False, "1+alpha in coset(2,0)", False, got)
    S = parse_circle("salpha", PHI)
    rep.case(not S.cyclic_check(1, 2, 3) and S.cyclic_check(3, 2, 1), "C(1,2,3) / C(3,2,1)",
             [False, True], [S.cyclic_check(1, 2, 3), S.cyclic_check(3, 2, 1)])
    got = cover_add(S, CoverElement(0, 1), CoverElement(0, 1))
    rep.case(tuple(got) == (1, 2), "(0,1)+(0,1)", [1, 2], list(got))
    D = parse_circle("dyadic-circle")
    got = cover_add(D, CoverElement(0, Fraction(3, 4)), CoverElement(0, Fraction(1, 2)))
    rep.case(tuple(got) == (1, Fraction(1, 4)), "(0,3/4)+(0,1/2)", [1, "1/4"], [got.winding, str(got.base)])
    rep.case(local_add(S, nonneg(1), nonneg(1)) is None, "local 1+1", None, repr(local_add(S, nonneg(1), nonneg(1))))
    rep.case(not equiv_mod_n_direct(S, nonneg(2), nonneg(4), 2), "2 ~ 4 mod 2", False, True)
    arc = eval_arc(_parse("arc(0,5)"), S)
    rep.case(arc.member(13), "13 in arc(0,5)", True, arc.member(13))
    for (p, n), want in {(3, 2): 4, (2, 2): 8, (5, 1): 1}.items():
        rep.case(power_index(n, p) == want, {"p": p, "n": n}, want, power_index(n, p))
    X = eval_cnc(_parse("coset(2,0)"), Z)
    E = eclass(0, Ctx(X, 2))
    rep.case(E == FULL, "E-class of 0 for 2Z", "whole line", repr(E))
    return rep


def _parse(text: str):
    from .expr import parse

    return parse(text)


SUITES = {
    "boolean": check_boolean,
    "canonical": check_canonical,
    "subgroup": check_subgroups,
    "rn": check_rn,
    "decompose": check_decompose,
    "pullback": check_pullback,
    "cyclic": check_cyclic,
    "arc": check_arcs,
    "padic": check_padic,
    "quadirr": check_quadirr,
    "examples": check_examples,
}


def run_suite(name: str, seed: int = 0, scale: float = 1.0) -> Report:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(seed=seed, scale=scale)
