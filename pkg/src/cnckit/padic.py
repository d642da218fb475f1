"""Rational points of Q_p: valuation, balls, n-th power cosets and finite unions of
pieces ``(a + b*P_n) & B(c, k)``.

x is an n-th power in Q_p exactly when n divides v(x) and the unit part of x is
an n-th power modulo p^(2*v_p(n) + 1); the latter is decided by a cached table of
all n-th powers of units in that finite ring.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

INF = math.inf


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def _vp_int(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def valuation(x, p: int):
    """The p-adic valuation of a rational; +inf at 0."""
    x = Fraction(x)
    if x == 0:
        return INF
    return _vp_int(abs(x.numerator), p) - _vp_int(x.denominator, p)


def in_ball(x, c, k: int, p: int) -> bool:
    return valuation(Fraction(x) - Fraction(c), p) >= k


def unit_part(x, p: int) -> Fraction:
    x = Fraction(x)
    return x / Fraction(p) ** valuation(x, p)


def precision(n: int, p: int) -> int:
    """Exponent e such that units are n-th powers iff they are n-th powers mod p^e."""
    return 2 * _vp_int(n, p) + 1


@lru_cache(maxsize=None)
def _unit_powers(n: int, p: int, e: int) -> frozenset:
    mod = p ** e
    return frozenset(pow(y, n, mod) for y in range(1, mod) if y % p)


def _residue(u: Fraction, mod: int) -> int:
    return u.numerator * pow(u.denominator, -1, mod) % mod


def is_nth_power(x, n: int, p: int) -> bool:
    """Whether x lies in P_n, the nonzero n-th powers of Q_p."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("0 is not in the multiplicative group")
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return True
    if valuation(x, p) % n:
        return False
    e = precision(n, p)
    return _residue(unit_part(x, p), p ** e) in _unit_powers(n, p, e)


def unit_reps(n: int, p: int) -> list:
    e = precision(n, p)
    return [u for u in range(1, p ** e) if u % p]


def power_index(n: int, p: int) -> int:
    """|Q_p^x / P_n|, by merging the classes of u*p^j (0 <= j < n, u a unit mod p^e)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    reps: list = []
    for j in range(n):
        for u in unit_reps(n, p):
            x = Fraction(u * p ** j)
            if not any(is_nth_power(x / r, n, p) for r in reps):
                reps.append(x)
    return len(reps)


@dataclass(frozen=True)
class PAdicPiece:
    """(a + b*P_n) & B(c, k); ``ball`` is None for the whole field."""

    a: Fraction
    b: Fraction
    n: int = 1
    ball: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.b == 0:
            raise ValueError("b must be nonzero")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.ball is not None:
            c, k = self.ball
            object.__setattr__(self, "ball", (Fraction(c), int(k)))

    def member(self, x, p: int) -> bool:
        x = Fraction(x)
        if self.ball is not None and not in_ball(x, self.ball[0], self.ball[1], p):
            return False
        y = (x - self.a) / self.b
        return y != 0 and is_nth_power(y, self.n, p)

    def to_json(self) -> dict:
        d = {"a": str(self.a), "b": str(self.b), "n": self.n}
        if self.ball is not None:
            d["ball"] = [str(self.ball[0]), self.ball[1]]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "PAdicPiece":
        ball = d.get("ball")
        return cls(Fraction(d["a"]), Fraction(d.get("b", 1)), int(d.get("n", 1)),
                   None if ball is None else (Fraction(ball[0]), int(ball[1])))


def ball_piece(c, k: int, p: int) -> PAdicPiece:
    """The ball B(c, k) written as a piece: a sits just outside the ball."""
    c = Fraction(c)
    return PAdicPiece(c + Fraction(p) ** (k - 1), 1, 1, (c, k))


@dataclass(frozen=True)
class PAdicSet:
    p: int
    pieces: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "pieces", tuple(self.pieces))

    def member(self, x) -> bool:
        return any(P.member(x, self.p) for P in self.pieces)

    def union(self, other: "PAdicSet") -> "PAdicSet":
        if other.p != self.p:
            raise ValueError("different primes")
        return PAdicSet(self.p, self.pieces + other.pieces)

    @property
    def moduli(self) -> list:
        return [P.n for P in self.pieces]

    def to_json(self) -> dict:
        return {"p": self.p, "pieces": [P.to_json() for P in self.pieces]}


def pset_member(x, A: PAdicSet) -> bool:
    return A.member(x)


def germ_equal_at_zero(A: PAdicSet, B: PAdicSet, depth: int) -> bool:
    """Compare A and B on the points u*p^j for the last lcm(n_i) levels j <= depth.

    A bounded-depth semi-decision: differences that only appear at valuations
    above ``depth`` are not seen.
    """
    if A.p != B.p:
        raise ValueError("different primes")
    p = A.p
    ns = A.moduli + B.moduli or [1]
    L = math.lcm(*ns)
    e = max(precision(n, p) for n in ns)
    units = [u for u in range(1, p ** e) if u % p]
    for j in range(depth - L + 1, depth + 1):
        scale = Fraction(p) ** j
        for u in units:
            x = u * scale
            if A.member(x) != B.member(x):
                return False
    return True
