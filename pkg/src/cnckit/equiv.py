"""The convex equivalence relation E attached to a cnc set, and the decomposition it induces.

For a < b, E(a, b) holds when some open interval (a', b') with a' < a, b' > b
satisfies:

1. a' and b' lie in the same coset of R_n,
2. (a', a) and (b, b') each have at least n elements,
3. inside (a', b') the set agrees with a union of cosets of nM.

Condition 3 fails exactly when the interval straddles a *wall*: a boundary cut
``lo`` of the set restricted to one coset r + nM, together with ``hi``, the
largest cut with the same trace on that coset.  The interval straddles the
wall iff ``a' < lo`` and ``hi < b'`` as cuts.  Choosing a' and b' as close to
a and b as condition 2 allows turns E into a finite scan over walls.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .cnc import CncSet, coset_meets, coset_points, snap_convex, sort_cuts
from .cuts import (MINUS_INF, PLUS_INF, ConvexSet, Cut, cut_at, cut_cmp, cut_le, cut_lt, cut_max,
                   cut_min, cut_translate, drop_max, element_between, snap_up)
from .groups import ConvexSubgroup, GroupSpec
from .subgroups import regular_subgroup


@dataclass(frozen=True)
class Wall:
    residue: object
    lo: Cut
    hi: Cut


@dataclass
class EquivContext:
    X: CncSet
    n: int

    def __post_init__(self):
        spec = self.X.spec
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if spec.effective_modulus(self.n) % self.X.modulus:
            raise ValueError(f"n={self.n} is not a multiple of the set's modulus {self.X.modulus}")

    @property
    def spec(self) -> GroupSpec:
        return self.X.spec

    @cached_property
    def Rn(self) -> ConvexSubgroup:
        return regular_subgroup(self.spec, self.n)

    @cached_property
    def classes(self) -> dict:
        return self.X.refine(self.n)

    @cached_property
    def walls(self) -> list:
        spec, m = self.spec, self.spec.effective_modulus(self.n)
        out = []
        for r, ps in self.classes.items():
            for C in ps:
                for c in (C.lower, C.upper):
                    if not c.is_infinite:
                        out.append(Wall(r, c, snap_up(spec, c, r, m)))
        return out

    # -- the two probe cuts ----------------------------------------------------
    def _left(self, a) -> Cut:
        spec = self.spec
        if spec.is_discrete:
            return cut_le(spec, spec.sub(a, spec.scale(spec.unit, self.n)))
        return cut_lt(spec, a)

    def _right(self, b) -> Cut:
        spec = self.spec
        if spec.is_discrete:
            return cut_le(spec, spec.add(b, spec.scale(spec.unit, self.n - 1)))
        return cut_le(spec, b)

    def same_rn_coset(self, a, b) -> bool:
        return self.Rn.contains(self.spec.sub(a, b))

    def rn_coset(self, a) -> ConvexSet:
        H = self.Rn
        if H.is_whole:
            return ConvexSet(MINUS_INF, PLUS_INF)
        spec = self.spec
        if H.is_zero:
            return ConvexSet(cut_lt(spec, a), cut_le(spec, a))
        t = a[: H.j]
        return ConvexSet(cut_at(spec, t, False), cut_at(spec, t, True))


def related(a, b, ctx: EquivContext) -> bool:
    spec = ctx.spec
    a, b = spec.element(a), spec.element(b)
    c = spec.compare(a, b)
    if c == 0:
        return True
    if c > 0:
        a, b = b, a
    if not ctx.same_rn_coset(a, b):
        return False
    A, B = ctx._left(a), ctx._right(b)
    return not any(cut_cmp(spec, A, w.lo) <= 0 and cut_cmp(spec, w.hi, B) <= 0 for w in ctx.walls)


def _add_min(spec: GroupSpec, c: Cut) -> Cut:
    # c together with the least element of its complement, when there is one
    if c.kind == "gap":
        if spec.is_lex:
            return cut_le(spec, c.value)
        e = spec.from_real(c.value)
        if e is not None:
            return cut_le(spec, e)
    return c


def eclass(a, ctx: EquivContext) -> ConvexSet:
    """The E-class of ``a`` as a convex set."""
    spec = ctx.spec
    a = spec.element(a)
    A, B = ctx._left(a), ctx._right(a)
    h = PLUS_INF
    l = MINUS_INF
    for w in ctx.walls:
        if cut_cmp(spec, A, w.lo) <= 0 and cut_cmp(spec, w.hi, h) < 0:
            h = w.hi
        if cut_cmp(spec, w.hi, B) <= 0 and cut_cmp(spec, w.lo, l) > 0:
            l = w.lo
    if spec.is_discrete:
        n, u = ctx.n, spec.unit
        upper = cut_translate(spec, drop_max(spec, h), spec.neg(spec.scale(u, n - 1)))
        lower = cut_translate(spec, l, spec.scale(u, n))
    else:
        upper = drop_max(spec, h)
        lower = _add_min(spec, l)
    lower = cut_min(spec, lower, cut_lt(spec, a))
    upper = cut_max(spec, upper, cut_le(spec, a))
    S = ctx.rn_coset(a)
    return ConvexSet(cut_max(spec, lower, S.lower), cut_min(spec, upper, S.upper))


def _is_finite(spec: GroupSpec, C: ConvexSet) -> bool:
    return coset_points(spec, C, spec.zero, 1) is not None


@dataclass
class Block:
    """A convex union of E-classes on which the set is a union of cosets of nM."""

    convex: ConvexSet
    residues: tuple
    finite: bool
    points: tuple = ()


def _slab_cuts(ctx: EquivContext) -> list:
    spec = ctx.spec
    j = ctx.Rn.j
    cuts = {MINUS_INF, PLUS_INF}
    for ps in ctx.classes.values():
        for C in ps:
            for c in (C.lower, C.upper):
                if c.is_infinite:
                    continue
                if c.kind == "prefix_gap" and len(c.value) <= j:
                    cuts.add(c)
                else:
                    t = c.value[:j]
                    cuts.add(cut_at(spec, t, False))
                    cuts.add(cut_at(spec, t, True))
    return sort_cuts(spec, cuts)


def _run(ctx: EquivContext, S: ConvexSet, slab_cuts: list) -> ConvexSet:
    # widen a whole R_n-coset class to the stretch of identical cosets around it
    spec = ctx.spec
    lo = max((c for c in slab_cuts if cut_cmp(spec, c, S.lower) <= 0),
             key=_cmp_key(spec), default=MINUS_INF)
    hi = min((c for c in slab_cuts if cut_cmp(spec, c, S.upper) >= 0),
             key=_cmp_key(spec), default=PLUS_INF)
    return ConvexSet(lo, hi)


def _cmp_key(spec):
    from functools import cmp_to_key

    return cmp_to_key(lambda a, b: cut_cmp(spec, a, b))


def residue_status(ctx: EquivContext, C: ConvexSet, r) -> str:
    """'none', 'full', 'empty' or 'mixed' for the trace of the set on C & (r + nM)."""
    spec = ctx.spec
    m = spec.effective_modulus(ctx.n)
    if not coset_meets(spec, C, r, m):
        return "none"
    S = snap_convex(spec, C, r, m)
    ps = ctx.classes.get(r, ())
    for P in ps:
        if cut_cmp(spec, P.lower, S.lower) <= 0 and cut_cmp(spec, S.upper, P.upper) <= 0:
            return "full"
    for P in ps:
        if cut_cmp(spec, cut_max(spec, P.lower, S.lower), cut_min(spec, P.upper, S.upper)) < 0:
            return "mixed"
    return "empty"


def blocks(ctx: EquivContext, limit: int = 10_000) -> list:
    """Tile the group by E-classes, merging whole R_n-cosets into runs."""
    spec = ctx.spec
    slabs = ctx.Rn.j > 0 and not ctx.Rn.is_zero and spec.is_lex
    slab_cuts = _slab_cuts(ctx) if slabs else None
    found: list = []

    def add(x):
        C = eclass(x, ctx)
        if slabs and C == ctx.rn_coset(x):
            C = _run(ctx, C, slab_cuts)
        found.append(C)

    add(spec.zero)
    for _ in range(limit):
        found.sort(key=lambda C: _cmp_key(spec)(C.lower))
        gaps = []
        prev = MINUS_INF
        for C in found:
            if cut_cmp(spec, prev, C.lower) < 0:
                gaps.append((prev, C.lower))
            prev = C.upper
        if cut_cmp(spec, prev, PLUS_INF) < 0:
            gaps.append((prev, PLUS_INF))
        if not gaps:
            break
        for lo, hi in gaps:
            add(element_between(spec, lo, hi))
    else:
        raise RuntimeError("E-class enumeration did not terminate")

    m = spec.effective_modulus(ctx.n)
    out = []
    for C in found:
        finite = _is_finite(spec, C)
        active = []
        for r in spec.residues(m):
            st = residue_status(ctx, C, r)
            if st == "mixed":
                raise AssertionError(f"E-class {C} is not uniform on residue {r}")
            if st == "full":
                active.append(r)
        pts = ()
        if finite:
            pts = tuple(x for x in coset_points(spec, C, spec.zero, 1) if ctx.X.member(x))
        out.append(Block(C, tuple(active), finite, pts))
    return out


def finite_classes(ctx: EquivContext) -> list:
    return [B.convex for B in blocks(ctx) if B.finite]


@dataclass
class Decomposition:
    n: int
    finite_part: list
    classes: list = field(default_factory=list)

    def reassemble(self, spec: GroupSpec) -> CncSet:
        cl: dict = {}
        for C, rs in self.classes:
            for r in rs:
                cl.setdefault(r, []).append(C)
        for e in self.finite_part:
            cl.setdefault(spec.residue(e, self.n), []).append(ConvexSet(cut_lt(spec, e), cut_le(spec, e)))
        return CncSet.from_classes(spec, self.n, cl)

    def to_json(self, spec: GroupSpec) -> dict:
        from .cuts import convex_to_json

        return {
            "n": self.n,
            "finite_part": [spec.format(e) for e in self.finite_part],
            "classes": [{"class": convex_to_json(spec, C), "residues": [spec.format(r) for r in rs]}
                        for C, rs in self.classes],
        }


def decompose(X: CncSet, n: Optional[int] = None) -> Decomposition:
    ctx = EquivContext(X, n or X.modulus)
    spec = X.spec
    finite_part, classes = [], []
    for B in blocks(ctx):
        single = B.finite and len(coset_points(spec, B.convex, spec.zero, 1)) == 1
        if single:
            finite_part.extend(B.points)
        else:
            classes.append((B.convex, B.residues))
    return Decomposition(ctx.n, spec.sorted(finite_part), classes)
