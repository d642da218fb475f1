"""Concrete ordered abelian groups with exact arithmetic and exact order.

Supported kinds:

``int``      the integers
``rat``      the rationals (divisible, so every coset of nM is M)
``lexint``   Z^k with the lexicographic order
``lexrat``   Q^k with the lexicographic order
``zalpha``   Z + alpha*Z inside (R, +), alpha a quadratic irrational; elements (p, q)
``dyadic``   Z[1/2] inside (R, +); the universal cover of the dyadic circle
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Optional

from .quadirr import QuadIrr, Real, normalize_real, parse_quadirr, sign_ab

KINDS = ("int", "rat", "lexint", "lexrat", "zalpha", "dyadic")


class SpecMismatch(TypeError):
    """Raised when an element does not belong to the active group."""


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _is_dyadic(x: Fraction) -> bool:
    den = x.denominator
    return den & (den - 1) == 0


def odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    k: int = 1
    alpha: Optional[QuadIrr] = field(default=None, compare=True)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind in ("lexint", "lexrat"):
            if self.k < 1:
                raise ValueError("lexicographic groups need arity k >= 1")
        elif self.k != 1:
            raise ValueError(f"{self.kind} has arity 1")
        if self.kind == "zalpha":
            if not isinstance(self.alpha, QuadIrr) or self.alpha.is_rational():
                raise ValueError("zalpha needs an irrational QuadIrr alpha")
        elif self.alpha is not None:
            raise ValueError("alpha is only meaningful for zalpha")

    # -- classification ---------------------------------------------------
    @property
    def is_lex(self) -> bool:
        return self.kind in ("lexint", "lexrat")

    @property
    def is_discrete(self) -> bool:
        return self.kind in ("int", "lexint")

    @property
    def is_divisible(self) -> bool:
        return self.kind in ("rat", "lexrat")

    @property
    def rank(self) -> int:
        """Number of coordinates of a residue modulo nM."""
        if self.is_lex:
            return self.k
        return 2 if self.kind == "zalpha" else 1

    def __str__(self):
        if self.is_lex:
            return f"{self.kind}:{self.k}"
        if self.kind == "zalpha":
            return f"z+alpha:{self.alpha}"
        return self.kind

    # -- elements ---------------------------------------------------------
    def element(self, x):
        """Validate and normalize ``x`` as an element of this group."""
        kind = self.kind
        try:
            if kind == "int":
                if isinstance(x, bool) or not isinstance(x, int):
                    if isinstance(x, Fraction) and x.denominator == 1:
                        return int(x)
                    raise SpecMismatch(f"{x!r} is not an integer")
                return x
            if kind == "rat":
                if isinstance(x, (tuple, QuadIrr)):
                    raise SpecMismatch(f"{x!r} is not rational")
                return Fraction(x)
            if kind == "dyadic":
                f = Fraction(x)
                if not _is_dyadic(f):
                    raise SpecMismatch(f"{x!r} is not a dyadic rational")
                return f
            if kind == "zalpha":
                if not isinstance(x, tuple) or len(x) != 2:
                    raise SpecMismatch(f"{x!r} is not a pair (p, q)")
                p, q = x
                if not (isinstance(p, int) and isinstance(q, int)):
                    raise SpecMismatch(f"{x!r} has non-integer coefficients")
                return (p, q)
            if not isinstance(x, tuple) or len(x) != self.k:
                raise SpecMismatch(f"{x!r} is not a {self.k}-tuple")
            if kind == "lexint":
                out = []
                for c in x:
                    if isinstance(c, Fraction) and c.denominator == 1:
                        c = int(c)
                    if isinstance(c, bool) or not isinstance(c, int):
                        raise SpecMismatch(f"{x!r} has non-integer coordinates")
                    out.append(c)
                return tuple(out)
            return tuple(Fraction(c) for c in x)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, SpecMismatch):
                raise
            raise SpecMismatch(str(exc)) from None

    @property
    def zero(self):
        if self.kind == "int":
            return 0
        if self.kind in ("rat", "dyadic"):
            return Fraction(0)
        if self.kind == "zalpha":
            return (0, 0)
        if self.kind == "lexint":
            return (0,) * self.k
        return (Fraction(0),) * self.k

    def add(self, x, y):
        if self.kind in ("int", "rat", "dyadic"):
            return x + y
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        if self.kind in ("int", "rat", "dyadic"):
            return -x
        return tuple(-a for a in x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scale(self, x, m: int):
        if self.kind in ("int", "rat", "dyadic"):
            return x * m
        return tuple(a * m for a in x)

    def real_value(self, x) -> Real:
        """The element as an exact real (archimedean kinds only)."""
        if self.kind == "zalpha":
            p, q = x
            return normalize_real(self.alpha * q + p)
        if self.is_lex:
            raise TypeError("lexicographic groups do not embed in R")
        return normalize_real(x)

    def from_real(self, r) -> Optional[object]:
        """The element equal to the real ``r``, or None when r is not in the group."""
        r = normalize_real(r)
        if self.kind == "zalpha":
            al = self.alpha
            if isinstance(r, Fraction):
                return (int(r), 0) if r.denominator == 1 else None
            if r.d != al.d:
                return None
            q = r.irrational_part / al.irrational_part
            if q.denominator != 1:
                return None
            p = r.rational_part - q * al.rational_part
            return (int(p), int(q)) if p.denominator == 1 else None
        if not isinstance(r, Fraction):
            return None
        if self.kind == "int":
            return int(r) if r.denominator == 1 else None
        if self.kind == "dyadic":
            return r if _is_dyadic(r) else None
        if self.kind == "rat":
            return r
        raise TypeError("lexicographic groups do not embed in R")

    def compare(self, x, y) -> int:
        """Exact three-way order comparison."""
        if self.kind == "zalpha":
            (p1, q1), (p2, q2) = x, y
            if q1 == q2:
                return _sign(p1 - p2)
            al, dq = self.alpha, q1 - q2
            return sign_ab(al.a * dq + (p1 - p2) * al.c, al.b * dq, al.d)
        return _sign((x > y) - (x < y))

    def lt(self, x, y) -> bool:
        return self.compare(x, y) < 0

    def sort_key(self):
        from functools import cmp_to_key

        return cmp_to_key(self.compare)

    def sorted(self, xs):
        return sorted(xs, key=self.sort_key())

    # -- divisibility and cosets -------------------------------------------
    def effective_modulus(self, n: int) -> int:
        """Smallest m with mM = nM."""
        if n < 1:
            raise ValueError("modulus must be >= 1")
        kind = self.kind
        if kind in ("rat", "lexrat"):
            return 1
        if kind == "dyadic":
            return odd_part(n)
        return n

    def in_nM(self, x, n: int) -> bool:
        if n < 1:
            raise ValueError("n must be >= 1")
        kind = self.kind
        if kind == "int":
            return x % n == 0
        if kind in ("rat", "lexrat"):
            return True
        if kind == "dyadic":
            return x.numerator % odd_part(n) == 0
        return all(c % n == 0 for c in x)

    def residue(self, x, n: int):
        """Canonical representative of the coset x + nM."""
        kind = self.kind
        if n < 1:
            raise ValueError("modulus must be >= 1")
        if kind == "int":
            return x % n
        if kind == "lexint":
            return tuple(c % n for c in x) if n > 1 else self.zero
        n = self.effective_modulus(n)
        if n == 1:
            return self.zero
        if kind == "dyadic":
            num, den = x.numerator, x.denominator
            return Fraction(num * pow(den, -1, n) % n)
        return tuple(c % n for c in x)

    def residues(self, n: int) -> list:
        return list(_residues(self, self.effective_modulus(n)))

    def coset_count(self, n: int) -> int:
        return len(self.residues(n))

    def refine_residues(self, rho, n: int, m: int) -> list:
        """Residues modulo mM (m a multiple of n) lying over ``rho`` modulo nM."""
        return [r for r in self.residues(m) if self.residue(r, n) == rho]

    @property
    def unit(self):
        """The minimal positive element, or None for dense groups."""
        if self.kind == "int":
            return 1
        if self.kind == "lexint":
            return (0,) * (self.k - 1) + (1,)
        return None

    # -- text encoding -----------------------------------------------------
    def format(self, x) -> str:
        return format_element(self, x)

    def parse(self, text: str):
        return self.element(parse_element(self, text))


@lru_cache(maxsize=None)
def _residues(spec: GroupSpec, n: int) -> tuple:
    if n == 1:
        return (spec.zero,)
    if spec.kind == "int":
        return tuple(range(n))
    if spec.kind == "dyadic":
        return tuple(Fraction(i) for i in range(n))
    return tuple(product(range(n), repeat=spec.rank))


def in_nM(spec: GroupSpec, x, n: int) -> bool:
    return spec.in_nM(spec.element(x), n)


def unit_element(spec: GroupSpec):
    return spec.unit


def add(spec: GroupSpec, x, y):
    return spec.add(spec.element(x), spec.element(y))


def compare(spec: GroupSpec, x, y) -> str:
    c = spec.compare(spec.element(x), spec.element(y))
    return {-1: "lt", 0: "eq", 1: "gt"}[c]


# -- text encoding -------------------------------------------------------

def _fmt_scalar(c) -> str:
    return str(c)


def format_element(spec: GroupSpec, x) -> str:
    if spec.kind == "zalpha":
        p, q = x
        if q == 0:
            return str(p)
        return f"{p}{'+' if q >= 0 else '-'}{abs(q)}*alpha"
    if spec.is_lex:
        return "(" + ",".join(_fmt_scalar(c) for c in x) + ")"
    return _fmt_scalar(x)


_ZALPHA = re.compile(r"^([+-]?\d+)?(?:([+-]?\d*)\*?alpha)?$")


def parse_element(spec: GroupSpec, text: str):
    s = text.strip().replace(" ", "")
    if spec.kind == "zalpha":
        if s.startswith("(") and s.endswith(")") and "," in s:
            p, q = s[1:-1].split(",")
            return (int(p), int(q))
        m = _ZALPHA.match(s)
        if not m or s == "":
            raise ValueError(f"cannot parse {text!r} as p+q*alpha")
        p = int(m.group(1)) if m.group(1) else 0
        qs = m.group(2)
        if qs is None:
            q = 0
        elif qs in ("", "+", "-"):
            q = -1 if qs == "-" else 1
        else:
            q = int(qs)
        return (p, q)
    if spec.is_lex:
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError(f"cannot parse {text!r} as a tuple")
        parts = [t for t in s[1:-1].split(",") if t != ""]
        conv = int if spec.kind == "lexint" else Fraction
        return tuple(conv(t) for t in parts)
    if spec.kind == "int":
        return int(s)
    return Fraction(s)


def parse_group(text: str, alpha: Optional[str] = None) -> GroupSpec:
    """Parse a group selector such as ``int``, ``lexint:2``, ``z+alpha:(1+1*sqrt(5))/2``."""
    s = text.strip().lower()
    if s in ("int", "z"):
        return GroupSpec("int")
    if s in ("rat", "q"):
        return GroupSpec("rat")
    if s == "dyadic":
        return GroupSpec("dyadic")
    m = re.fullmatch(r"(lexint|lexrat|lexq|lexz):(\d+)", s)
    if m:
        kind = {"lexq": "lexrat", "lexz": "lexint"}.get(m.group(1), m.group(1))
        return GroupSpec(kind, int(m.group(2)))
    if s.startswith("z+alpha") or s == "zalpha":
        src = s.split(":", 1)[1] if ":" in s else alpha
        if src is None:
            raise ValueError("z+alpha needs an alpha (z+alpha:<quadirr> or --alpha)")
        a = parse_quadirr(src) if isinstance(src, str) else src
        if not isinstance(a, QuadIrr):
            raise ValueError(f"alpha {src!r} is rational")
        return GroupSpec("zalpha", alpha=a)
    raise ValueError(f"unknown group {text!r}")


PHI = QuadIrr(1, 1, 2, 5)


@dataclass(frozen=True)
class ConvexSubgroup:
    """The convex subgroup {x : x[:j] = 0}.

    For archimedean kinds ``j`` is 1 (the zero subgroup) or 0 (the whole group).
    """

    spec: GroupSpec
    j: int

    def __post_init__(self):
        top = self.spec.k if self.spec.is_lex else 1
        if not 0 <= self.j <= top:
            raise ValueError(f"prefix length {self.j} out of range for {self.spec}")

    @property
    def is_zero(self) -> bool:
        return self.j == (self.spec.k if self.spec.is_lex else 1)

    @property
    def is_whole(self) -> bool:
        return self.j == 0

    def contains(self, x) -> bool:
        if self.j == 0:
            return True
        if self.spec.is_lex:
            return all(c == 0 for c in x[: self.j])
        return x == self.spec.zero

    def issubset(self, other: "ConvexSubgroup") -> bool:
        return self.j >= other.j

    @property
    def descriptor(self) -> str:
        if self.is_whole:
            return "whole"
        if self.is_zero:
            return "zero"
        return f"prefix:{self.j}"

    def __str__(self):
        if not self.spec.is_lex:
            return "{0}" if self.is_zero else str(self.spec)
        k, j = self.spec.k, self.j
        base = "Z" if self.spec.kind == "lexint" else "Q"
        return "x".join(["{0}"] * j + [base] * (k - j)) if j < k else "{0}"
