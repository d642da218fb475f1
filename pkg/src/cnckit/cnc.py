"""Finite unions of sets ``C & (r + nM)`` in a canonical, minimal-modulus form.

Within one coset every convex piece is stored with both cuts snapped down to
the smallest cut having the same trace on the coset.  Two pieces of a coset
then merge exactly when the lower cut of the second does not exceed the upper
cut of the first.  The modulus is reduced by prime descent: a divisor ``d``
is accepted when, for every residue modulo ``d``, the set meets the coset in
finitely many convex components.  This makes the modulus the least one over
all presentations, so finite sets always end up with modulus 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

from .cuts import (MINUS_INF, PLUS_INF, ConvexSet, Cut, convex_from_json, convex_is_empty,
                   convex_member, convex_to_json, cut_at, cut_cmp, cut_contains, cut_max, cut_min, cut_neg,
                   cut_translate, cut_lt, cut_le, snap_down, snap_up)
from .groups import GroupSpec, SpecMismatch


class NotASubgroup(ValueError):
    pass


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def prime_factors(n: int) -> list:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class CncPiece:
    convex: ConvexSet
    residue: object
    modulus: int = 1


def snap_convex(spec: GroupSpec, C: ConvexSet, r, n: int) -> ConvexSet:
    return ConvexSet(snap_down(spec, C.lower, r, n), snap_down(spec, C.upper, r, n))


def tight_hull(spec: GroupSpec, C: ConvexSet, r, n: int) -> ConvexSet:
    """Smallest convex set with the same trace on r + nM as ``C``."""
    return ConvexSet(snap_up(spec, C.lower, r, n), snap_down(spec, C.upper, r, n))


def merge_pieces(spec: GroupSpec, pieces: Iterable[ConvexSet], r, n: int) -> tuple:
    """Snap to the coset, drop empties, sort and merge overlapping pieces."""
    snapped = [snap_convex(spec, C, r, n) for C in pieces]
    snapped = [C for C in snapped if cut_cmp(spec, C.lower, C.upper) < 0]
    if not snapped:
        return ()
    from functools import cmp_to_key

    snapped.sort(key=cmp_to_key(lambda a, b: cut_cmp(spec, a.lower, b.lower)))
    out = [snapped[0]]
    for C in snapped[1:]:
        last = out[-1]
        if cut_cmp(spec, C.lower, last.upper) <= 0:
            if cut_cmp(spec, C.upper, last.upper) > 0:
                out[-1] = ConvexSet(last.lower, C.upper)
        else:
            out.append(C)
    return tuple(out)


def complement_pieces(spec: GroupSpec, pieces: tuple) -> list:
    out, prev = [], MINUS_INF
    for C in pieces:
        out.append(ConvexSet(prev, C.lower))
        prev = C.upper
    out.append(ConvexSet(prev, PLUS_INF))
    return out


def intersect_pieces(spec: GroupSpec, P: tuple, Q: tuple) -> list:
    out = []
    for A in P:
        for B in Q:
            lo = cut_max(spec, A.lower, B.lower)
            hi = cut_min(spec, A.upper, B.upper)
            if cut_cmp(spec, lo, hi) < 0:
                out.append(ConvexSet(lo, hi))
    return out


def coset_points(spec: GroupSpec, C: ConvexSet, r, n: int, limit: int = 10_000) -> Optional[list]:
    """Elements of C & (r + nM) when there are finitely many, else None."""
    n = spec.effective_modulus(n)
    C = snap_convex(spec, C, r, n)
    lo, hi = C.lower, C.upper
    if cut_cmp(spec, lo, hi) >= 0:
        return []
    if lo.is_infinite or hi.is_infinite or hi.kind != "principal":
        return None
    e = hi.value
    kind = spec.kind
    if kind == "int":
        if lo.kind != "principal":
            return None
        pts = list(range(lo.value + n, e + 1, n))
    elif kind == "lexint":
        if lo.kind != "principal" or lo.value[:-1] != e[:-1]:
            return None
        head = e[:-1]
        pts = [head + (v,) for v in range(lo.value[-1] + n, e[-1] + 1, n)]
    else:
        # dense cosets: finite only for a single point
        if cut_cmp(spec, lo, cut_lt(spec, e)) != 0:
            return None
        pts = [e]
    if len(pts) > limit:
        raise ValueError(f"finite set too large to enumerate ({len(pts)} points)")
    return pts


def _residue_key(r):
    return r


class CncSet:
    """Canonical finite union of cnc pieces over one group."""

    __slots__ = ("spec", "modulus", "classes", "_hash")

    def __init__(self, spec: GroupSpec, modulus: int, classes: dict, _trusted: bool = False):
        self.spec = spec
        self.modulus = modulus
        self.classes = classes
        self._hash = None

    # -- construction ------------------------------------------------------
    @classmethod
    def from_classes(cls, spec: GroupSpec, n: int, classes: dict, reduce: bool = True) -> "CncSet":
        n = spec.effective_modulus(n)
        out = {}
        for r, pieces in classes.items():
            r = spec.residue(r, n)
            merged = merge_pieces(spec, list(out.get(r, ())) + list(pieces), r, n)
            if merged:
                out[r] = merged
            else:
                out.pop(r, None)
        X = cls(spec, n, dict(sorted(out.items(), key=lambda kv: _residue_key(kv[0]))))
        return X._reduced() if reduce else X

    @classmethod
    def empty(cls, spec: GroupSpec) -> "CncSet":
        return cls(spec, 1, {})

    @classmethod
    def whole(cls, spec: GroupSpec) -> "CncSet":
        return cls(spec, 1, {spec.zero: (ConvexSet(MINUS_INF, PLUS_INF),)})

    @classmethod
    def coset(cls, spec: GroupSpec, n: int, a) -> "CncSet":
        return canonicalize(spec, [CncPiece(ConvexSet(MINUS_INF, PLUS_INF), spec.element(a), n)])

    @classmethod
    def convex(cls, spec: GroupSpec, C: ConvexSet) -> "CncSet":
        return canonicalize(spec, [CncPiece(C, spec.zero, 1)])

    # -- structure -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, CncSet):
            return NotImplemented
        return self.spec == other.spec and self.modulus == other.modulus and self.classes == other.classes

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, self.modulus, tuple(self.classes.items())))
        return self._hash

    def __repr__(self):
        return f"CncSet({self.spec}, n={self.modulus}, {self.classes})"

    def is_empty(self) -> bool:
        return not self.classes

    def pieces(self) -> list:
        return [CncPiece(C, r, self.modulus) for r, ps in self.classes.items() for C in ps]

    def boundary_cuts(self) -> list:
        cuts = set()
        for ps in self.classes.values():
            for C in ps:
                cuts.add(C.lower)
                cuts.add(C.upper)
        return list(cuts)

    def refine(self, m: int) -> dict:
        """Per-residue pieces modulo ``m`` (a multiple of the modulus), empties included."""
        spec = self.spec
        m = spec.effective_modulus(m)
        if m % self.modulus:
            raise ValueError(f"{m} is not a multiple of the modulus {self.modulus}")
        out = {}
        for r in spec.residues(m):
            base = self.classes.get(spec.residue(r, self.modulus), ())
            out[r] = base if m == self.modulus else merge_pieces(spec, base, r, m)
        return out

    # -- modulus reduction ---------------------------------------------------
    def _try_modulus(self, d: int) -> Optional[dict]:
        spec, n = self.spec, self.modulus
        refined = {r: self.classes.get(r, ()) for r in spec.residues(n)}
        buckets: dict = {}
        for r in refined:
            buckets.setdefault(spec.residue(r, d), []).append(r)
        out = {}
        for rho in spec.residues(d):
            over = buckets.get(rho, [])
            cuts = set()
            for r in over:
                for C in refined[r]:
                    cuts.add(C.lower)
                    cuts.add(C.upper)
            cuts = sort_cuts(spec, cuts | {MINUS_INF, PLUS_INF})
            pieces = []
            for lo, hi in zip(cuts, cuts[1:]):
                got = self._split_cell(ConvexSet(lo, hi), over, refined, (), 0)
                if got is None:
                    return None
                pieces.extend(got)
            if pieces:
                out[rho] = pieces
        return out

    def _cell_status(self, cell: ConvexSet, over: list, refined: dict) -> tuple:
        # every residue class is uniform on a cell; report which verdicts occur
        spec, n = self.spec, self.modulus
        ins = outs = False
        for r in over:
            if not coset_meets(spec, cell, r, n):
                continue
            if any(cut_cmp(spec, C.lower, cell.lower) <= 0 and cut_cmp(spec, cell.upper, C.upper) <= 0
                   for C in refined[r]):
                ins = True
            else:
                outs = True
        return ins, outs

    def _split_cell(self, cell: ConvexSet, over: list, refined: dict, prefix: tuple, i: int):
        """The part of ``cell`` in the set as convex pieces, or None when that needs
        infinitely many pieces.  Mixed cells are cut into points (archimedean kinds)
        or into the slabs of coordinate ``i`` below ``prefix`` (lexicographic kinds)."""
        spec = self.spec
        ins, outs = self._cell_status(cell, over, refined)
        if not outs:
            return [cell] if ins else []
        if not ins:
            return []
        if spec.kind != "lexint":
            pts = []
            for r in over:
                if self._cell_status(cell, [r], refined)[0]:
                    got = coset_points(spec, cell, r, self.modulus)
                    if got is None:
                        return None
                    pts.extend(got)
            return [ConvexSet(cut_lt(spec, e), cut_le(spec, e)) for e in pts]
        span = _coordinate_span(cell, prefix, i)
        if span is None:
            return None
        out = []
        for v in range(span[0], span[1] + 1):
            t = prefix + (v,)
            sub = ConvexSet(cut_max(spec, cell.lower, cut_at(spec, t, False)),
                            cut_min(spec, cell.upper, cut_at(spec, t, True)))
            if convex_is_empty(spec, sub):
                continue
            got = self._split_cell(sub, over, refined, t, i + 1)
            if got is None:
                return None
            out.extend(got)
        return out

    def _reduced(self) -> "CncSet":
        X = self
        while X.modulus > 1:
            for p in prime_factors(X.modulus):
                d = X.spec.effective_modulus(X.modulus // p)
                got = X._try_modulus(d)
                if got is not None:
                    X = CncSet.from_classes(X.spec, d, got, reduce=False)
                    break
            else:
                break
        return X

    # -- queries ---------------------------------------------------------------
    def member(self, x) -> bool:
        spec = self.spec
        x = spec.element(x)
        ps = self.classes.get(spec.residue(x, self.modulus), ())
        return any(convex_member(spec, x, C) for C in ps)

    def bitmap(self, pts: list) -> list:
        """Membership of every element of an ascending list, by bisecting each piece."""
        spec = self.spec
        bits = [False] * len(pts)
        res = [spec.residue(x, self.modulus) for x in pts] if self.modulus > 1 and self.classes else None
        for r, ps in self.classes.items():
            for C in ps:
                i, j = _bisect_cut(spec, pts, C.lower), _bisect_cut(spec, pts, C.upper)
                for t in range(i, j):
                    if res is None or res[t] == r:
                        bits[t] = True
        return bits

    def __contains__(self, x):
        return self.member(x)

    def classify(self):
        """("empty", None), ("finite", sorted elements) or ("infinite", None)."""
        if not self.classes:
            return "empty", None
        pts = []
        for r, ps in self.classes.items():
            for C in ps:
                got = coset_points(self.spec, C, r, self.modulus)
                if got is None:
                    return "infinite", None
                pts.extend(got)
        return "finite", self.spec.sorted(pts)

    def window(self, lo, hi, cap: int = 64) -> list:
        from .oracle import Window, enum_window

        return [x for x in enum_window(Window(self.spec, lo, hi, cap)) if self.member(x)]

    # -- algebra ---------------------------------------------------------------
    def _check(self, other: "CncSet"):
        if self.spec != other.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")

    def _combine(self, other: "CncSet", op) -> "CncSet":
        self._check(other)
        spec = self.spec
        m = lcm(self.modulus, other.modulus)
        A, B = self.refine(m), other.refine(m)
        return CncSet.from_classes(spec, m, {r: op(A[r], B[r]) for r in A})

    def union(self, other: "CncSet") -> "CncSet":
        return self._combine(other, lambda P, Q: list(P) + list(Q))

    def intersect(self, other: "CncSet") -> "CncSet":
        spec = self.spec
        return self._combine(other, lambda P, Q: intersect_pieces(spec, P, Q))

    def difference(self, other: "CncSet") -> "CncSet":
        spec = self.spec
        return self._combine(other, lambda P, Q: intersect_pieces(spec, P, tuple(complement_pieces(spec, Q))))

    def complement(self) -> "CncSet":
        spec, n = self.spec, self.modulus
        return CncSet.from_classes(spec, n, {r: complement_pieces(spec, self.classes.get(r, ()))
                                             for r in spec.residues(n)})

    __or__ = union
    __and__ = intersect
    __sub__ = difference
    __invert__ = complement

    def translate(self, g) -> "CncSet":
        spec, n = self.spec, self.modulus
        g = spec.element(g)
        return CncSet.from_classes(spec, n, {
            spec.add(r, g): [ConvexSet(cut_translate(spec, C.lower, g), cut_translate(spec, C.upper, g))
                             for C in ps]
            for r, ps in self.classes.items()})

    def negate(self) -> "CncSet":
        spec, n = self.spec, self.modulus
        return CncSet.from_classes(spec, n, {
            spec.neg(r): [ConvexSet(cut_neg(spec, C.upper), cut_neg(spec, C.lower)) for C in ps]
            for r, ps in self.classes.items()})

    # -- encoding --------------------------------------------------------------
    def to_json(self) -> dict:
        spec = self.spec
        return {
            "group": str(spec),
            "modulus": self.modulus,
            "classes": [{"residue": spec.format(r), "pieces": [convex_to_json(spec, C) for C in ps]}
                        for r, ps in self.classes.items()],
        }

    @classmethod
    def from_json(cls, spec: GroupSpec, d: dict) -> "CncSet":
        n = int(d["modulus"])
        return cls.from_classes(spec, n, {
            spec.parse(c["residue"]): [convex_from_json(spec, p) for p in c["pieces"]]
            for c in d["classes"]})


def _bisect_cut(spec: GroupSpec, pts: list, c: Cut) -> int:
    # number of leading elements of the ascending list that lie in the cut
    lo, hi = 0, len(pts)
    while lo < hi:
        mid = (lo + hi) // 2
        if cut_contains(spec, c, pts[mid]):
            lo = mid + 1
        else:
            hi = mid
    return lo


def _coordinate_span(cell: ConvexSet, prefix: tuple, i: int) -> Optional[tuple]:
    """Least and greatest coordinate ``i`` over the elements of a lexint cell lying
    in the slab of ``prefix``; None when unbounded."""
    lo = hi = None
    c = cell.lower
    if not c.is_infinite and c.value[:i] == prefix:
        t = c.value
        lo = t[i] + 1 if len(t) == i + 1 else t[i]
    c = cell.upper
    if not c.is_infinite and c.value[:i] == prefix and len(c.value) > i:
        hi = c.value[i]
    if lo is None or hi is None:
        return None
    return lo, hi


def sort_cuts(spec: GroupSpec, cuts) -> list:
    from functools import cmp_to_key

    return sorted(cuts, key=cmp_to_key(lambda a, b: cut_cmp(spec, a, b)))


def coset_meets(spec: GroupSpec, C: ConvexSet, r, n: int) -> bool:
    """Whether C meets r + nM."""
    S = snap_convex(spec, C, r, n)
    return cut_cmp(spec, S.lower, S.upper) < 0


def canonicalize(spec: GroupSpec, pieces: Iterable[CncPiece]) -> CncSet:
    pieces = list(pieces)
    if not pieces:
        return CncSet.empty(spec)
    n = 1
    for P in pieces:
        n = lcm(n, spec.effective_modulus(P.modulus))
    classes: dict = {}
    for P in pieces:
        spec.element(P.residue)
        pm = spec.effective_modulus(P.modulus)
        rho = spec.residue(P.residue, pm)
        for r in spec.refine_residues(rho, pm, n):
            classes.setdefault(r, []).append(P.convex)
    return CncSet.from_classes(spec, n, classes)


def boolean(kind: str, A: CncSet, B: Optional[CncSet] = None) -> CncSet:
    if kind == "complement":
        if B is not None:
            raise ValueError("complement takes one argument")
        return A.complement()
    if B is None:
        raise ValueError(f"{kind} takes two arguments")
    ops = {"union": A.union, "intersect": A.intersect, "difference": A.difference}
    if kind not in ops:
        raise ValueError(f"unknown boolean operation {kind!r}")
    return ops[kind](B)


def subgroup_reduce(A: CncSet) -> CncSet:
    """Check that A is a subgroup presented as a coset union and return it at minimal modulus."""
    spec, n = A.spec, A.modulus
    full = (ConvexSet(MINUS_INF, PLUS_INF),)
    if any(ps != full for ps in A.classes.values()):
        raise NotASubgroup("not a union of full cosets")
    rs = set(A.classes)
    if spec.residue(spec.zero, n) not in rs:
        raise NotASubgroup("does not contain 0")
    for a in rs:
        for b in rs:
            if spec.residue(spec.sub(a, b), n) not in rs:
                raise NotASubgroup("not closed under subtraction")
    return A._reduced()
