"""Cuts (downward closed subsets) and convex sets as differences of two cuts.

A bounded cut is stored in canonical form, so structural equality is set
equality:

``principal(e)``        {x <= e}, e in the group
``gap(v)``              {x < v}; v a real for archimedean dense kinds, a full
                        tuple for ``lexrat``.  Used only when the set has no maximum.
``prefix_gap(t, c)``    lexicographic kinds, len(t) < k: {x : x[:j] <= t} if ``c``
                        else {x : x[:j] < t}

``-inf`` is the empty cut and ``+inf`` the whole group; both count as
non-valuational by convention.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .groups import ConvexSubgroup, GroupSpec
from .quadirr import format_real, normalize_real, parse_quadirr, rational_between, real_cmp, real_floor


@dataclass(frozen=True)
class Cut:
    kind: str
    value: object = None
    closed: bool = True

    def __repr__(self):
        if self.kind in ("-inf", "+inf"):
            return self.kind
        if self.kind == "prefix_gap":
            return f"prefix_gap({self.value}, {'<=' if self.closed else '<'})"
        return f"{self.kind}({self.value})"

    @property
    def is_infinite(self) -> bool:
        return self.kind in ("-inf", "+inf")


MINUS_INF = Cut("-inf")
PLUS_INF = Cut("+inf")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _as_real(spec: GroupSpec, point):
    if spec.kind == "zalpha" and isinstance(point, tuple):
        return spec.real_value(point)
    return normalize_real(point)


def cut_at(spec: GroupSpec, point, closed: bool = True) -> Cut:
    """Canonical cut {x <= point} (closed) or {x < point} (open).

    ``point`` is an element, a real (archimedean kinds), or a prefix tuple
    (lexicographic kinds).
    """
    if spec.is_lex:
        t = tuple(point)
        j = len(t)
        if not 1 <= j <= spec.k:
            raise ValueError(f"prefix {t} has bad length for {spec}")
        if spec.kind == "lexint" and all(type(c) is int for c in t):
            if not closed:
                t = t[:-1] + (t[-1] - 1,)
            return Cut("principal", t) if j == spec.k else Cut("prefix_gap", t, True)
        if spec.kind == "lexint":
            head = tuple(int(c) for c in t[:-1])
            if any(c != h for c, h in zip(t[:-1], head)):
                raise ValueError(f"non-integer prefix {t}")
            last = Fraction(t[-1])
            if closed:
                v = real_floor(last)
            else:
                v = -real_floor(-last) - 1
            t = head + (v,)
            return Cut("principal", t) if j == spec.k else Cut("prefix_gap", t, True)
        t = tuple(Fraction(c) for c in t)
        if j == spec.k:
            return Cut("principal", t) if closed else Cut("gap", t, False)
        return Cut("prefix_gap", t, bool(closed))
    r = _as_real(spec, point)
    if spec.kind == "int":
        v = real_floor(r) if closed else -real_floor(-r) - 1
        return Cut("principal", v)
    e = spec.from_real(r)
    if e is not None and closed:
        return Cut("principal", e)
    return Cut("gap", r, False)


def cut_le(spec: GroupSpec, e) -> Cut:
    return cut_at(spec, e, True)


def cut_lt(spec: GroupSpec, e) -> Cut:
    return cut_at(spec, e, False)


def _arch_key(spec: GroupSpec, c: Cut):
    if c.kind == "principal":
        return (spec.real_value(c.value) if spec.kind == "zalpha" else c.value), 1
    return c.value, -1


def _lex_key(c: Cut):
    t = c.value
    if c.kind == "principal":
        return t, True
    if c.kind == "gap":
        return t, False
    return t, c.closed


def cut_cmp(spec: GroupSpec, c1: Cut, c2: Cut) -> int:
    """Three-way comparison of cuts under inclusion."""
    if c1.is_infinite or c2.is_infinite:
        o1 = -1 if c1.kind == "-inf" else 1 if c1.kind == "+inf" else 0
        o2 = -1 if c2.kind == "-inf" else 1 if c2.kind == "+inf" else 0
        return _sign(o1 - o2)
    if spec.is_lex:
        t1, s1 = _lex_key(c1)
        t2, s2 = _lex_key(c2)
        j1, j2 = len(t1), len(t2)
        m = min(j1, j2)
        a, b = t1[:m], t2[:m]
        if a != b:
            return -1 if a < b else 1
        if j1 == j2:
            return _sign(int(s1) - int(s2))
        if j1 < j2:
            return 1 if s1 else -1
        return -1 if s2 else 1
    if spec.kind == "int":
        return _sign(c1.value - c2.value)
    if spec.kind == "zalpha" and c1.kind == c2.kind == "principal":
        return spec.compare(c1.value, c2.value)
    v1, s1 = _arch_key(spec, c1)
    v2, s2 = _arch_key(spec, c2)
    if isinstance(v1, Fraction) and isinstance(v2, Fraction):
        c = _sign(v1 - v2)
    else:
        c = real_cmp(v1, v2)
    return c if c else _sign(s1 - s2)


def cut_min(spec, *cuts) -> Cut:
    best = cuts[0]
    for c in cuts[1:]:
        if cut_cmp(spec, c, best) < 0:
            best = c
    return best


def cut_max(spec, *cuts) -> Cut:
    best = cuts[0]
    for c in cuts[1:]:
        if cut_cmp(spec, c, best) > 0:
            best = c
    return best


def cut_contains(spec: GroupSpec, c: Cut, x) -> bool:
    """Membership of the element ``x`` in the cut ``c``."""
    kind = c.kind
    if kind == "-inf":
        return False
    if kind == "+inf":
        return True
    if spec.is_lex:
        t = c.value
        head = x[: len(t)]
        if kind == "principal":
            return x <= t
        if kind == "gap":
            return x < t
        return head <= t if c.closed else head < t
    if kind == "principal":
        return spec.compare(x, c.value) <= 0
    v = c.value
    if spec.kind == "zalpha":
        return real_cmp(spec.real_value(x), v) < 0
    if isinstance(v, Fraction):
        return x < v
    return real_cmp(x, v) < 0


def cut_neg(spec: GroupSpec, c: Cut) -> Cut:
    """The cut {x : -x not in c}."""
    if c.kind == "-inf":
        return PLUS_INF
    if c.kind == "+inf":
        return MINUS_INF
    if spec.is_lex:
        t = tuple(-a for a in c.value)
        if c.kind == "principal":
            return cut_at(spec, t, False)
        if c.kind == "gap":
            return cut_at(spec, t, True)
        return cut_at(spec, t, not c.closed)
    if c.kind == "principal":
        return cut_at(spec, spec.neg(c.value), False)
    return cut_at(spec, -c.value, True)


def cut_translate(spec: GroupSpec, c: Cut, g) -> Cut:
    """The cut c + g."""
    if c.is_infinite:
        return c
    if spec.is_lex:
        t = tuple(a + b for a, b in zip(c.value, g))
        if c.kind == "principal":
            return Cut("principal", t)
        if c.kind == "gap":
            return Cut("gap", t, False)
        return Cut("prefix_gap", t, c.closed)
    if c.kind == "principal":
        return Cut("principal", spec.add(c.value, g))
    return cut_at(spec, c.value + spec.real_value(g), False)


def drop_max(spec: GroupSpec, c: Cut) -> Cut:
    """The cut with its maximum removed (unchanged when it has none)."""
    if c.kind == "principal":
        return cut_at(spec, c.value, False)
    return c


def snap_down(spec: GroupSpec, c: Cut, r, n: int) -> Cut:
    """Smallest cut whose trace on the coset r + nM equals that of ``c``."""
    n = spec.effective_modulus(n)
    if n == 1 or c.is_infinite:
        return c
    kind = spec.kind
    if kind == "int":
        b = c.value
        return Cut("principal", b - (b - r) % n)
    if kind in ("zalpha", "dyadic"):
        if c.kind == "principal" and not spec.in_nM(spec.sub(c.value, r), n):
            return Cut("gap", spec.real_value(c.value), False)
        return c
    # lexint
    t = c.value
    j = len(t)
    m = 0
    while m < j and (t[m] - r[m]) % n == 0:
        m += 1
    if m == j:
        return c
    s = t[m] - 1 - (t[m] - 1 - r[m]) % n
    return cut_at(spec, t[:m] + (s,), True)


def snap_up(spec: GroupSpec, c: Cut, r, n: int) -> Cut:
    """Largest cut whose trace on the coset r + nM equals that of ``c``."""
    nr = spec.residue(spec.neg(r), n)
    return cut_neg(spec, snap_down(spec, cut_neg(spec, c), nr, n))


# -- convex sets ---------------------------------------------------------

@dataclass(frozen=True)
class ConvexSet:
    """The convex set ``upper \\ lower``."""

    lower: Cut
    upper: Cut

    def __repr__(self):
        return f"ConvexSet({self.lower!r}, {self.upper!r})"


FULL = ConvexSet(MINUS_INF, PLUS_INF)


def convex_is_empty(spec: GroupSpec, C: ConvexSet) -> bool:
    return cut_cmp(spec, C.lower, C.upper) >= 0


def convex_member(spec: GroupSpec, x, C: ConvexSet) -> bool:
    return cut_contains(spec, C.upper, x) and not cut_contains(spec, C.lower, x)


def convex_intersect(spec: GroupSpec, C1: ConvexSet, C2: ConvexSet) -> ConvexSet:
    return ConvexSet(cut_max(spec, C1.lower, C2.lower), cut_min(spec, C1.upper, C2.upper))


def closed_interval(spec: GroupSpec, lo, hi) -> ConvexSet:
    return ConvexSet(cut_lt(spec, lo), cut_le(spec, hi))


def point_set(spec: GroupSpec, e) -> ConvexSet:
    return ConvexSet(cut_lt(spec, e), cut_le(spec, e))


def coset_hull(spec: GroupSpec, H: ConvexSubgroup, x) -> ConvexSet:
    """The coset x + H of a convex subgroup, as a convex set."""
    if H.is_whole:
        return FULL
    if H.is_zero:
        return point_set(spec, x)
    t = x[: H.j]
    return ConvexSet(cut_at(spec, t, False), cut_at(spec, t, True))


def is_valuational(spec: GroupSpec, c: Cut) -> bool:
    """Whether c + a = c for some positive a."""
    return c.kind == "prefix_gap"


def stabilizer(spec: GroupSpec, c: Cut) -> ConvexSubgroup:
    """The convex subgroup {a : c + a = c = c - a}."""
    if c.is_infinite:
        return ConvexSubgroup(spec, 0)
    if c.kind == "prefix_gap":
        return ConvexSubgroup(spec, len(c.value))
    return ConvexSubgroup(spec, spec.k if spec.is_lex else 1)


# -- finding witnesses ---------------------------------------------------

def _zalpha_above(spec: GroupSpec, lo, hi):
    # element p + q*alpha with lo < value < hi
    al = spec.alpha
    af = float(al)
    lof = float(lo)
    for i in range(0, 1 << 20):
        q = (i + 1) // 2 * (1 if i % 2 else -1)
        p = int(lof - q * af) - 2
        while real_cmp(spec.real_value((p, q)), lo) <= 0:
            p += 1
        if real_cmp(spec.real_value((p, q)), hi) < 0:
            return (p, q)
    raise RuntimeError("no element found between cuts")


def element_between(spec: GroupSpec, c1: Cut, c2: Cut):
    """An element in c2 minus c1 (requires c1 < c2)."""
    if cut_cmp(spec, c1, c2) >= 0:
        raise ValueError("element_between needs c1 < c2")
    if spec.kind == "int":
        if c1.kind == "principal":
            return c1.value + 1
        if c2.kind == "principal":
            return c2.value
        return 0
    if spec.is_lex:
        return _lex_between(spec, c1, c2)
    if c2.kind == "principal" and not cut_contains(spec, c1, c2.value):
        return c2.value
    if c1.kind == "gap":
        e = spec.from_real(c1.value)
        if e is not None and cut_contains(spec, c2, e):
            return e
    lo = None if c1.is_infinite else _arch_key(spec, c1)[0]
    hi = None if c2.is_infinite else _arch_key(spec, c2)[0]
    if lo is None and hi is None:
        return spec.zero
    if lo is None:
        lo = Fraction(real_floor(hi) - 1)
    if hi is None:
        hi = Fraction(real_floor(lo) + 2)
    if spec.kind == "zalpha":
        return _zalpha_above(spec, lo, hi)
    return spec.element(rational_between(lo, hi))


def _lex_between(spec: GroupSpec, c1: Cut, c2: Cut):
    k = spec.k
    vals = [c.value for c in (c1, c2) if not c.is_infinite]
    big = 2 + max([abs(a) for t in vals for a in t] or [0])
    big = int(big) * 2 + 2
    if spec.kind == "lexint":
        deltas = (0, 1, -1)
    else:
        deltas = (0, 1, -1, Fraction(1, 2), Fraction(-1, 2))
    fills = (-big, 0, big)
    heads = [()]
    for t in vals:
        for i in range(len(t)):
            for dl in deltas:
                heads.append(t[:i] + (t[i] + dl,))
    if len(vals) == 2:
        t1, t2 = vals
        for i in range(min(len(t1), len(t2))):
            if t1[:i] == t2[:i] and t1[i] != t2[i]:
                mid = (Fraction(t1[i]) + Fraction(t2[i])) / 2
                if spec.kind == "lexint":
                    mid = real_floor(mid)
                heads.append(t1[:i] + (mid,))
                break
    for head in heads:
        for rest in product(fills, repeat=k - len(head)):
            x = spec.element(tuple(head) + rest)
            if not cut_contains(spec, c1, x) and cut_contains(spec, c2, x):
                return x
    raise RuntimeError(f"no probe element between {c1!r} and {c2!r}")


# -- JSON ------------------------------------------------------------------

def _fmt_tuple(t) -> str:
    return "(" + ",".join(str(a) for a in t) + ")"


def cut_to_json(spec: GroupSpec, c: Cut) -> dict:
    if c.is_infinite:
        return {"kind": c.kind}
    if c.kind == "principal":
        return {"kind": "principal", "value": spec.format(c.value)}
    if c.kind == "gap":
        v = _fmt_tuple(c.value) if spec.is_lex else format_real(c.value)
        return {"kind": "gap", "value": v}
    return {"kind": "prefix_gap", "value": _fmt_tuple(c.value), "closed": c.closed}


def cut_from_json(spec: GroupSpec, d: dict) -> Cut:
    kind = d["kind"]
    if kind == "-inf":
        return MINUS_INF
    if kind == "+inf":
        return PLUS_INF
    v = d["value"]
    if kind == "principal":
        return cut_le(spec, spec.parse(v))
    if spec.is_lex:
        conv = int if spec.kind == "lexint" else Fraction
        t = tuple(conv(a) for a in v.strip("()").split(",") if a)
        return cut_at(spec, t, bool(d.get("closed", False)) if kind == "prefix_gap" else False)
    return cut_at(spec, parse_quadirr(v), False)


def convex_to_json(spec: GroupSpec, C: ConvexSet) -> dict:
    return {"lower": cut_to_json(spec, C.lower), "upper": cut_to_json(spec, C.upper)}


def convex_from_json(spec: GroupSpec, d: dict) -> ConvexSet:
    return ConvexSet(cut_from_json(spec, d["lower"]), cut_from_json(spec, d["upper"]))


def format_convex(spec: GroupSpec, C: ConvexSet) -> str:
    def side(c: Cut, upper: bool) -> str:
        if c.is_infinite:
            return c.kind
        if c.kind == "principal":
            v = spec.format(c.value)
            return f"{v}]" if upper else f"({v}"
        if c.kind == "gap":
            v = _fmt_tuple(c.value) if spec.is_lex else format_real(c.value)
            return f"{v})" if upper else f"[{v}"
        v = _fmt_tuple(c.value) + "*"
        if upper:
            return f"{v}]" if c.closed else f"{v})"
        return f"({v}" if c.closed else f"[{v}"

    lo = side(C.lower, False)
    hi = side(C.upper, True)
    if C.lower.kind == "-inf":
        lo = "(-inf"
    if C.upper.kind == "+inf":
        hi = "+inf)"
    return f"{lo}, {hi}"
