"""Cyclically ordered groups, their universal cover, the local group and arc sets.

Two circles are supported:

``salpha``  (Z, S_alpha): k sits at the fractional part of k*alpha
``dyadic``  Z[1/2] / Z with the standard circular order

The universal cover H = Z x M is realised concretely as an ordered group from
:mod:`cnckit.groups`: (k, a) corresponds to k + {a*alpha} in Z + alpha*Z for
``salpha`` and to k + a in Z[1/2] for ``dyadic``.  Arc sets are stored as the
canonical cnc set of their preimage inside [0, u).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .cnc import CncPiece, CncSet, canonicalize
from .cuts import ConvexSet, cut_le, cut_lt
from .groups import GroupSpec
from .quadirr import QuadIrr, parse_quadirr, real_floor, sign_ab


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class CyclicSpec:
    kind: str
    alpha: Optional[QuadIrr] = None

    def __post_init__(self):
        if self.kind == "salpha":
            if not isinstance(self.alpha, QuadIrr) or self.alpha.is_rational():
                raise ValueError("salpha needs an irrational alpha")
        elif self.kind == "dyadic":
            if self.alpha is not None:
                raise ValueError("the dyadic circle takes no alpha")
        else:
            raise ValueError(f"unknown circle {self.kind!r}")

    def __str__(self):
        return f"salpha:{self.alpha}" if self.kind == "salpha" else "dyadic-circle"

    # -- circle elements -----------------------------------------------------
    def element(self, x):
        if self.kind == "salpha":
            if isinstance(x, bool) or not isinstance(x, int):
                if isinstance(x, Fraction) and x.denominator == 1:
                    return int(x)
                raise TypeError(f"{x!r} is not an integer")
            return x
        f = Fraction(x)
        if f.denominator & (f.denominator - 1):
            raise TypeError(f"{x!r} is not a dyadic rational")
        return f - (f.numerator // f.denominator)

    @property
    def zero(self):
        return 0 if self.kind == "salpha" else Fraction(0)

    def add(self, a, b):
        return a + b if self.kind == "salpha" else self.element(a + b)

    def neg(self, a):
        return -a if self.kind == "salpha" else self.element(-a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, a, m: int):
        return a * m if self.kind == "salpha" else self.element(a * m)

    def floor(self, a) -> int:
        """floor(a*alpha) for salpha; 0 for the dyadic circle."""
        if self.kind == "salpha":
            return _floor_mul(self.alpha, a)
        return 0

    def position(self, a):
        """The point of [0, 1) representing ``a``, exactly."""
        if self.kind == "salpha":
            return self.alpha * a - self.floor(a)
        return a

    def pos_cmp(self, a, b) -> int:
        if self.kind == "salpha":
            if a == b:
                return 0
            al, m = self.alpha, a - b
            k = self.floor(a) - self.floor(b)
            return sign_ab(al.a * m - k * al.c, al.b * m, al.d)
        return _sign(a - b)

    def cyclic_check(self, a, b, c) -> bool:
        """C(a, b, c): going around from a one meets b strictly before c."""
        if self.kind == "salpha":
            if a == b or b == c or c == a:
                return False
            al = self.alpha
            p, q, r, d = al.a, al.b, al.c, al.d
            fa, fb, fc = (_floor_parts(p, q, r, d, t) for t in (a, b, c))
            ab = sign_ab(p * (a - b) - (fa - fb) * r, q * (a - b), d)
            bc = sign_ab(p * (b - c) - (fb - fc) * r, q * (b - c), d)
            ca = sign_ab(p * (c - a) - (fc - fa) * r, q * (c - a), d)
        else:
            ab, bc, ca = self.pos_cmp(a, b), self.pos_cmp(b, c), self.pos_cmp(c, a)
        if ab == 0 or bc == 0 or ca == 0:
            return False
        return (ab < 0 and bc < 0) or (bc < 0 and ca < 0) or (ca < 0 and ab < 0)

    def prec(self, a, b) -> bool:
        """a before b when walking around from 0."""
        z = self.zero
        return self.cyclic_check(z, a, b) or (a == z and b != z)

    def in_nM(self, a, n: int) -> bool:
        if self.kind == "salpha":
            return a % n == 0
        return True

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        s = text.strip()
        return self.element(int(s) if self.kind == "salpha" else Fraction(s))

    # -- the cover -----------------------------------------------------------
    @property
    def cover_group(self) -> GroupSpec:
        if self.kind == "salpha":
            return GroupSpec("zalpha", alpha=self.alpha)
        return GroupSpec("dyadic")

    def to_h(self, x: "CoverElement"):
        """The cover element as an element of the concrete ordered group."""
        k, a = x
        if self.kind == "salpha":
            return (k - self.floor(a), a)
        return Fraction(k) + a

    def from_h(self, g) -> "CoverElement":
        if self.kind == "salpha":
            p, q = g
            return CoverElement(p + self.floor(q), q)
        k = g.numerator // g.denominator
        return CoverElement(k, g - k)

    def lift(self, a) -> "CoverElement":
        return CoverElement(0, self.element(a))

    @property
    def u(self) -> "CoverElement":
        return CoverElement(1, self.zero)

    def cover_add(self, x: "CoverElement", y: "CoverElement") -> "CoverElement":
        (k, a), (k2, b) = x, y
        s = self.add(a, b)
        z = self.zero
        if a == z or b == z or self.cyclic_check(z, a, s):
            return CoverElement(k + k2, s)
        return CoverElement(k + k2 + 1, s)

    def cover_neg(self, x: "CoverElement") -> "CoverElement":
        k, a = x
        if a == self.zero:
            return CoverElement(-k, a)
        return CoverElement(-k - 1, self.neg(a))

    def cover_lt(self, x: "CoverElement", y: "CoverElement") -> bool:
        if x.winding != y.winding:
            return x.winding < y.winding
        return self.prec(x.base, y.base)


def _floor_mul(alpha: QuadIrr, k: int) -> int:
    return _floor_parts(alpha.a, alpha.b, alpha.c, alpha.d, k)


@lru_cache(maxsize=1 << 16)
def _floor_parts(a: int, b: int, c: int, d: int, k: int) -> int:
    return real_floor(QuadIrr(a * k, b * k, c, d))


@dataclass(frozen=True)
class CoverElement:
    winding: int
    base: object

    def __iter__(self):
        return iter((self.winding, self.base))


def project(x: CoverElement):
    return x.base


def lift(spec: CyclicSpec, a) -> CoverElement:
    return spec.lift(a)


def cyclic_check(spec: CyclicSpec, a, b, c) -> bool:
    return spec.cyclic_check(spec.element(a), spec.element(b), spec.element(c))


def cover_add(spec: CyclicSpec, x: CoverElement, y: CoverElement) -> CoverElement:
    return spec.cover_add(x, y)


# -- the local group I = (-u, u) -------------------------------------------

@dataclass(frozen=True)
class LocalElement:
    """``a`` in M^>= (neg False) or ``-a`` in M^- (neg True, a != 0)."""

    neg: bool
    a: object

    def __post_init__(self):
        if self.neg and self.a == 0:
            raise ValueError("-0 is not an element of M^-")

    def __repr__(self):
        return f"-{self.a}" if self.neg else f"+{self.a}"


def nonneg(a) -> LocalElement:
    return LocalElement(False, a)


def negative(a) -> LocalElement:
    return LocalElement(True, a)


def local_negate(x: LocalElement) -> LocalElement:
    return LocalElement(not x.neg, x.a) if x.a != 0 else x


def local_add(spec: CyclicSpec, x: LocalElement, y: LocalElement) -> Optional[LocalElement]:
    """The partial sum on M^- u M^>=, or None when the sum leaves (-u, u)."""
    z = spec.zero
    if not x.neg and x.a == z:
        return y
    if not y.neg and y.a == z:
        return x
    if x.neg and not y.neg:
        x, y = y, x
    a, b = x.a, y.a
    s = spec.add(a, b)
    if x.neg == y.neg:
        if spec.cyclic_check(z, a, s):
            return LocalElement(x.neg, s)
        return None
    # a >= 0 and -b < 0
    if a == b:
        return nonneg(z)
    if spec.cyclic_check(z, b, a):
        return nonneg(spec.sub(a, b))
    return negative(spec.sub(b, a))


def local_le(spec: CyclicSpec, x: LocalElement, y: LocalElement) -> bool:
    """The order on M^- u M^>= (non-strict)."""
    if x == y:
        return True
    if x.neg != y.neg:
        return x.neg
    if not x.neg:
        return spec.prec(x.a, y.a)
    return spec.prec(y.a, x.a)


def iota(spec: CyclicSpec, x: LocalElement):
    """The local element as an element of the concrete cover group."""
    c = spec.lift(x.a)
    if x.neg:
        c = spec.cover_neg(c)
    return spec.to_h(c)


def equiv_mod_n_direct(spec: CyclicSpec, x: LocalElement, y: LocalElement, n: int) -> bool:
    H = spec.cover_group
    return H.in_nM(H.sub(iota(spec, x), iota(spec, y)), n)


def _roots(spec: CyclicSpec, m, n: int) -> list:
    # all e in M with n*e = m
    if spec.kind == "salpha":
        return [m // n] if m % n == 0 else []
    out = []
    for i in range(n):
        e = (m + i) / n
        if not (e.denominator & (e.denominator - 1)):
            out.append(spec.element(e))
    return out


def _times(spec: CyclicSpec, e: LocalElement, n: int) -> Optional[LocalElement]:
    s = e
    for _ in range(n - 1):
        s = local_add(spec, s, e)
        if s is None:
            return None
    return s


def in_nH_local(spec: CyclicSpec, c: LocalElement, n: int) -> bool:
    """c lies in nH: some e in I has e + ... + e (n times) = c."""
    if c.neg:
        c = local_negate(c)
    return any(_times(spec, nonneg(e), n) == c for e in _roots(spec, c.a, n))


def _candidates(spec: CyclicSpec):
    if spec.kind == "salpha":
        k = 0
        while True:
            yield k
            yield -k - 1
            k += 1
    den = 1
    while True:
        den *= 2
        for num in range(1, den, 2):
            yield Fraction(num, den)


def equiv_mod_n_local(spec: CyclicSpec, x: LocalElement, y: LocalElement, n: int,
                      search: int = 1 << 20) -> bool:
    """Congruence modulo nH decided inside the local group, using only its sum and order."""
    if x == y:
        return True
    if x.neg and y.neg:
        return equiv_mod_n_local(spec, local_negate(x), local_negate(y), n, search)
    if not x.neg and not y.neg:
        d = local_add(spec, y, local_negate(x)) if x.a != spec.zero else y
        return in_nH_local(spec, d, n)
    if x.neg:
        x, y = y, x
    # x >= 0 > y: shift y by some c in nH with |y| <= c < u, landing in [0, u)
    target = local_negate(y)
    for i, e in enumerate(_candidates(spec)):
        if i >= search:
            break
        c = _times(spec, nonneg(e), n)
        if c is None or c.neg or not local_le(spec, target, c):
            continue
        shifted = local_add(spec, y, c)
        return equiv_mod_n_local(spec, x, shifted, n, search)
    raise RuntimeError("no element of nH found in the search range")


def equiv_mod_n(spec: CyclicSpec, x: LocalElement, y: LocalElement, n: int) -> bool:
    return equiv_mod_n_direct(spec, x, y, n)


# -- index bound -------------------------------------------------------------

def circle_index(spec: CyclicSpec, n: int, window: int = 16) -> int:
    """|M/nM| by grouping a window of circle elements."""
    if spec.kind == "salpha":
        pts = range(-window, window + 1)
    else:
        pts = [spec.element(Fraction(i, 16)) for i in range(16)]
    reps: list = []
    for a in pts:
        if not any(spec.in_nM(spec.sub(a, r), n) for r in reps):
            reps.append(a)
    return len(reps)


def cover_index(spec: CyclicSpec, n: int, window: int = 16) -> int:
    """|H/nH| by grouping a box of cover elements."""
    H = spec.cover_group
    if spec.kind == "salpha":
        pts = [(p, q) for p in range(-window, window + 1) for q in range(-window, window + 1)]
    else:
        pts = [Fraction(i, 4) for i in range(-4 * window, 4 * window + 1)]
    reps: list = []
    for g in pts:
        if not any(H.in_nM(H.sub(g, r), n) for r in reps):
            reps.append(g)
    return len(reps)


# -- arc sets ---------------------------------------------------------------

@dataclass(frozen=True)
class Arc:
    """The set a + n*J where J is the open arc running counterclockwise from p to q."""

    p: object
    q: object
    n: int = 1
    a: object = 0

    def to_json(self, spec: CyclicSpec) -> dict:
        return {"base": spec.format(self.a), "modulus": self.n,
                "from": spec.format(self.p), "to": spec.format(self.q)}


def _unit_interval(spec: CyclicSpec) -> ConvexSet:
    H = spec.cover_group
    return ConvexSet(cut_lt(H, H.zero), cut_lt(H, spec.to_h(spec.u)))


def arc_pullback(spec: CyclicSpec, arc: Arc) -> CncSet:
    """The preimage of a + nJ inside [0, u), as a cnc set of the cover group."""
    H = spec.cover_group
    n = arc.n
    if n < 1:
        raise ValueError("arc modulus must be >= 1")
    p, q, a = spec.element(arc.p), spec.element(arc.q), spec.element(arc.a)
    P, Q = spec.to_h(spec.lift(p)), spec.to_h(spec.lift(q))
    U = spec.to_h(spec.u)
    if H.compare(P, Q) >= 0:
        # J wraps past 0: it lifts to (p, q + u)
        Q = H.add(Q, U)
    A = spec.to_h(spec.lift(a))
    pieces = []
    for k in range(-2 * n - 2, 2):
        shift = H.add(A, H.scale(U, k))
        L, R = H.add(shift, H.scale(P, n)), H.add(shift, H.scale(Q, n))
        pieces.append(CncPiece(ConvexSet(cut_le(H, L), cut_lt(H, R)), shift, n))
    X = canonicalize(H, pieces)
    return X & canonicalize(H, [CncPiece(_unit_interval(spec), H.zero, 1)])


class ArcSet:
    """A finite boolean combination of arcs, held as its canonical preimage in [0, u)."""

    __slots__ = ("spec", "cover")

    def __init__(self, spec: CyclicSpec, cover: CncSet):
        self.spec = spec
        self.cover = cover

    @classmethod
    def from_arcs(cls, spec: CyclicSpec, arcs) -> "ArcSet":
        X = CncSet.empty(spec.cover_group)
        for arc in arcs:
            X = X | arc_pullback(spec, arc)
        return cls(spec, X)

    @classmethod
    def empty(cls, spec: CyclicSpec) -> "ArcSet":
        return cls(spec, CncSet.empty(spec.cover_group))

    @classmethod
    def whole(cls, spec: CyclicSpec) -> "ArcSet":
        H = spec.cover_group
        return cls(spec, canonicalize(H, [CncPiece(_unit_interval(spec), H.zero, 1)]))

    @classmethod
    def point(cls, spec: CyclicSpec, a) -> "ArcSet":
        H = spec.cover_group
        e = spec.to_h(spec.lift(a))
        return cls(spec, canonicalize(H, [CncPiece(ConvexSet(cut_lt(H, e), cut_le(H, e)), H.zero, 1)]))

    def __eq__(self, other):
        return isinstance(other, ArcSet) and self.spec == other.spec and self.cover == other.cover

    def __hash__(self):
        return hash((self.spec, self.cover))

    def __repr__(self):
        return f"ArcSet({self.spec}, {self.cover!r})"

    def member(self, a) -> bool:
        return self.cover.member(self.spec.to_h(self.spec.lift(a)))

    def union(self, other: "ArcSet") -> "ArcSet":
        return ArcSet(self.spec, self.cover | other.cover)

    def intersect(self, other: "ArcSet") -> "ArcSet":
        return ArcSet(self.spec, self.cover & other.cover)

    def difference(self, other: "ArcSet") -> "ArcSet":
        return ArcSet(self.spec, self.cover - other.cover)

    def complement(self) -> "ArcSet":
        return ArcSet.whole(self.spec).difference(self)

    __or__ = union
    __and__ = intersect
    __sub__ = difference
    __invert__ = complement

    def is_empty(self) -> bool:
        return self.cover.is_empty()

    def to_json(self) -> dict:
        return {"circle": str(self.spec), "cover": self.cover.to_json()}


def arc_boolean(kind: str, A: ArcSet, B: Optional[ArcSet] = None) -> ArcSet:
    if kind == "complement":
        return A.complement()
    return {"union": A.union, "intersect": A.intersect, "difference": A.difference}[kind](B)


def arc_member(a, A: ArcSet) -> bool:
    return A.member(a)


def parse_circle(text: str, alpha: Optional[str] = None) -> CyclicSpec:
    s = text.strip().lower()
    if s in ("dyadic-circle", "dyadic_circle", "dyadiccircle", "circle:dyadic"):
        return CyclicSpec("dyadic")
    if s.startswith("salpha") or s.startswith("s+alpha") or s.startswith("zs"):
        src = s.split(":", 1)[1] if ":" in s else alpha
        if src is None:
            raise ValueError("salpha needs an alpha")
        a = parse_quadirr(src)
        if not isinstance(a, QuadIrr):
            raise ValueError(f"alpha {src!r} is rational")
        return CyclicSpec("salpha", a)
    raise ValueError(f"unknown circle {text!r}")
