"""Exact quadratic irrationals ``(a + b*sqrt(d)) / c`` and exact real comparison.

Every order decision involving an irrational scalar reduces to integer
comparisons here.  Supporting other computable reals would mean replacing
:func:`quad_sign` by interval refinement with an escalating precision and
accepting that equality is only semi-decidable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from math import gcd, isqrt, lcm
from numbers import Rational
from typing import Union


@lru_cache(maxsize=256)
def _squarefree(d: int) -> bool:
    if d < 1:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class QuadIrr:
    """The real number ``(a + b*sqrt(d)) / c`` with integer a, b, c and square-free d."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int = 1, d: int = 2):
        if c == 0:
            raise ZeroDivisionError("QuadIrr with c = 0")
        if not _squarefree(d):
            raise ValueError(f"d={d} is not a square-free positive integer")
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def from_parts(cls, r: Fraction, s: Fraction, d: int) -> "QuadIrr":
        """Build ``r + s*sqrt(d)`` from rational parts."""
        r, s = Fraction(r), Fraction(s)
        c = r.denominator * s.denominator // gcd(r.denominator, s.denominator)
        return cls(int(r * c), int(s * c), c, d)

    @property
    def rational_part(self) -> Fraction:
        return Fraction(self.a, self.c)

    @property
    def irrational_part(self) -> Fraction:
        return Fraction(self.b, self.c)

    def is_rational(self) -> bool:
        return self.b == 0 or self.d == 1

    def __repr__(self):
        return f"QuadIrr({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self):
        return f"({self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt({self.d}))/{self.c}"

    def __eq__(self, other):
        if isinstance(other, QuadIrr):
            return real_cmp(self, other) == 0
        if isinstance(other, (int, Fraction)):
            return real_cmp(self, other) == 0
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, (QuadIrr, int, Fraction)):
            return real_cmp(self, other) < 0
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(to_fraction(self))
        return hash((self.a, self.b, self.c, self.d))

    def __neg__(self):
        return QuadIrr(-self.a, -self.b, self.c, self.d)

    def __add__(self, other):
        if isinstance(other, int):
            return QuadIrr(self.a + other * self.c, self.b, self.c, self.d)
        if isinstance(other, Fraction):
            n, m = other.numerator, other.denominator
            return QuadIrr(self.a * m + n * self.c, self.b * m, self.c * m, self.d)
        if isinstance(other, QuadIrr):
            if other.d != self.d:
                if other.is_rational():
                    return self + to_fraction(other)
                if self.is_rational():
                    return other + to_fraction(self)
                raise ValueError("cannot add quadratic irrationals over different fields")
            c1, c2 = self.c, other.c
            return QuadIrr(self.a * c2 + other.a * c1, self.b * c2 + other.b * c1, c1 * c2, self.d)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadIrr(self.a * other, self.b * other, self.c, self.d)
        if isinstance(other, Fraction):
            n, m = other.numerator, other.denominator
            return QuadIrr(self.a * n, self.b * n, self.c * m, self.d)
        return NotImplemented

    __rmul__ = __mul__

    def __float__(self):
        return (self.a + self.b * self.d ** 0.5) / self.c


Real = Union[Fraction, QuadIrr]


def sign_ab(a: int, b: int, d: int) -> int:
    """Exact sign of ``a + b*sqrt(d)`` for integers a, b and square-free d."""
    if d == 1:
        return _sign(a + b)
    sa, sb = _sign(a), _sign(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger magnitude wins
    diff = a * a - b * b * d
    return sa if diff > 0 else sb if diff < 0 else 0


def quad_sign(q: QuadIrr) -> int:
    """Exact sign of ``(a + b*sqrt(d)) / c`` as -1, 0 or 1 (c is kept positive)."""
    return sign_ab(q.a, q.b, q.d)


def to_fraction(x) -> Fraction:
    if isinstance(x, QuadIrr):
        if not x.is_rational():
            raise ValueError(f"{x} is irrational")
        return Fraction(x.a + (x.b if x.d == 1 else 0), x.c)
    return Fraction(x)


def normalize_real(x) -> Real:
    """Canonical representative: rationals become Fraction, irrationals stay QuadIrr."""
    if isinstance(x, QuadIrr):
        return to_fraction(x) if x.is_rational() else x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact real: {x!r}")


def _sign_sum(A: Fraction, B: Fraction, d1: int, C: Fraction, d2: int) -> int:
    # sign of A + B*sqrt(d1) + C*sqrt(d2)
    L = lcm(A.denominator, B.denominator, C.denominator)
    return _sign_sum_int(int(A * L), int(B * L), d1, int(C * L), d2)


def _sign_sum_int(a: int, b: int, d1: int, c: int, d2: int) -> int:
    # sign of a + b*sqrt(d1) + c*sqrt(d2) for integers
    sp, sq = sign_ab(a, b, d1), _sign(c)
    if sp == 0 or sq == 0 or sq == sp:
        return sq if sp == 0 else sp
    s = sign_ab(a * a + b * b * d1 - c * c * d2, 2 * a * b, d1)
    return sp if s > 0 else sq if s < 0 else 0


def real_sign(x) -> int:
    if isinstance(x, QuadIrr):
        return quad_sign(x)
    return _sign(x)


def real_cmp(x, y) -> int:
    """Exact three-way comparison of two reals (int, Fraction or QuadIrr)."""
    # integer-only fast paths for the common shapes
    tx, ty = type(x), type(y)
    if tx is QuadIrr and x.b != 0 and x.d != 1:
        if ty is QuadIrr:
            if y.d == x.d:
                return sign_ab(x.a * y.c - y.a * x.c, x.b * y.c - y.b * x.c, x.d)
            if y.d != 1:
                return _sign_sum_int(x.a * y.c - y.a * x.c, x.b * y.c, x.d, -y.b * x.c, y.d)
        if ty is int:
            return sign_ab(x.a - y * x.c, x.b, x.d)
        if ty is Fraction:
            p, q = y.numerator, y.denominator
            return sign_ab(x.a * q - p * x.c, x.b * q, x.d)
    elif ty is QuadIrr and y.b != 0 and y.d != 1 and tx in (int, Fraction):
        return -real_cmp(y, x)
    x, y = normalize_real(x), normalize_real(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return _sign(x - y)
    if isinstance(x, Fraction):
        return -real_cmp(y, x)
    # x is a genuine QuadIrr
    if isinstance(y, Fraction) or y.d == x.d:
        return quad_sign(x - y)
    return _sign_sum(x.rational_part - y.rational_part, x.irrational_part, x.d,
                     -y.irrational_part, y.d)


def real_floor(x) -> int:
    """Exact floor of a real."""
    x = normalize_real(x)
    if isinstance(x, Fraction):
        return x.numerator // x.denominator
    b, d = x.b, x.d
    root = isqrt(b * b * d)
    fs = root if b > 0 else -root - 1  # floor(b*sqrt(d)); never an integer
    return (x.a + fs) // x.c


def real_to_float(x) -> float:
    return float(normalize_real(x))


def rational_between(lo, hi) -> Fraction:
    """A dyadic rational strictly between reals ``lo < hi``."""
    if real_cmp(lo, hi) >= 0:
        raise ValueError("empty interval")
    k = 0
    while True:
        scale = 1 << k
        q = Fraction(real_floor(normalize_real(lo) * scale) + 1, scale)
        if real_cmp(q, hi) < 0:
            return q
        k += 1


def parse_quadirr(text: str) -> Real:
    """Parse ``(a+b*sqrt(d))/c``, ``sqrt(d)``, ``b*sqrt(d)``, or a rational ``p/q``."""
    import re

    s = text.replace(" ", "")
    m = re.fullmatch(r"\(?([+-]?\d+)([+-]\d*)\*?sqrt\((\d+)\)\)?(?:/(\d+))?", s)
    if m:
        a = int(m.group(1))
        bs = m.group(2)
        b = int(bs + "1") if bs in "+-" else int(bs)
        return normalize_real(QuadIrr(a, b, int(m.group(4) or 1), int(m.group(3))))
    m = re.fullmatch(r"\(?([+-]?\d*)\*?sqrt\((\d+)\)\)?(?:/(\d+))?", s)
    if m:
        bs = m.group(1)
        b = int(bs + "1") if bs in ("", "+", "-") else int(bs)
        return normalize_real(QuadIrr(0, b, int(m.group(3) or 1), int(m.group(2))))
    return Fraction(s)


def format_real(x) -> str:
    x = normalize_real(x)
    return str(x)
