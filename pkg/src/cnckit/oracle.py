"""Brute-force oracles and random instance generators.

Everything here works point by point on finite windows of elements and never
touches cuts or canonical forms, so it can audit the symbolic algebra.  Random
instances come from :class:`random.Random` (Mersenne Twister, MT19937) seeded
with an integer, which makes fixtures reproducible across platforms.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable

from .expr import Atom, Bin, Expr, Not, parse_endpoint, to_text
from .groups import GroupSpec
from .quadirr import normalize_real, real_cmp, real_floor


class WindowCapError(ValueError):
    def __init__(self, count: int, limit: int):
        super().__init__(f"window holds more than {limit} elements (stopped after {count})")
        self.count = count


@dataclass(frozen=True)
class Window:
    """Finite set of group elements.

    ``int``/``rat``/``dyadic``: the grid points of [lo, hi] (denominators up to
    ``cap``; powers of two for ``dyadic``).  ``zalpha``: pairs with |p|, |q| <= cap
    whose value lies in [lo, hi] (None for no bound).  Lexicographic kinds: the
    coordinate box between ``lo`` and ``hi``, rational coordinates with
    denominators up to ``cap``.
    """

    spec: GroupSpec
    lo: object = None
    hi: object = None
    cap: int = 8
    limit: int = 1_000_000


def _grid(lo: Fraction, hi: Fraction, dens) -> list:
    pts = set()
    for d in dens:
        start = -((-lo * d).numerator // (-lo * d).denominator)
        stop = (hi * d).numerator // (hi * d).denominator
        for m in range(start, stop + 1):
            pts.add(Fraction(m, d))
    return sorted(pts)


def enum_window(w: Window) -> list:
    spec = w.spec
    kind = spec.kind
    out: list
    if kind == "int":
        if w.lo is None or w.hi is None:
            raise ValueError("integer windows need both bounds")
        if w.hi - w.lo + 1 > w.limit:
            raise WindowCapError(w.limit, w.limit)
        return list(range(w.lo, w.hi + 1))
    if kind in ("rat", "dyadic"):
        dens = [d for d in range(1, w.cap + 1) if kind == "rat" or d & (d - 1) == 0]
        out = _grid(Fraction(w.lo), Fraction(w.hi), dens)
    elif kind == "zalpha":
        c = w.cap
        out = []
        for p in range(-c, c + 1):
            for q in range(-c, c + 1):
                v = spec.real_value((p, q))
                if w.lo is not None and real_cmp(v, _real(spec, w.lo)) < 0:
                    continue
                if w.hi is not None and real_cmp(v, _real(spec, w.hi)) > 0:
                    continue
                out.append((p, q))
        out = spec.sorted(out)
    else:
        axes = []
        for a, b in zip(w.lo, w.hi):
            if kind == "lexint":
                axes.append(range(a, b + 1))
            else:
                axes.append(_grid(Fraction(a), Fraction(b), range(1, w.cap + 1)))
        out = [spec.element(t) for t in product(*axes)]
        out.sort()
    if len(out) > w.limit:
        raise WindowCapError(len(out), w.limit)
    return out


def _real(spec, v):
    if isinstance(v, tuple):
        return spec.real_value(v)
    return normalize_real(v)


@dataclass
class Bitmap:
    elements: list
    bits: list

    def members(self) -> list:
        return [x for x, b in zip(self.elements, self.bits) if b]


# -- pointwise semantics over ordered groups -------------------------------------

def _endpoint_comparator(spec, ep) -> Callable:
    v = ep.value
    if ep.prefix:
        j = len(v)
        return lambda x: (x[:j] > v) - (x[:j] < v)
    if isinstance(v, tuple) or spec.kind == "int" or (spec.kind in ("rat", "dyadic") and isinstance(v, Fraction)):
        if spec.kind == "zalpha":
            return lambda x: spec.compare(x, v)
        return lambda x: (x > v) - (x < v)
    return lambda x: real_cmp(_real_value(spec, x), v)


@lru_cache(maxsize=1 << 16)
def _real_value(spec, x):
    return spec.real_value(x)


def compile_atom(spec: GroupSpec, atom: Atom) -> Callable:
    name = atom.name
    if name == "all":
        return lambda x: True
    if name == "empty":
        return lambda x: False
    if name == "point":
        e = spec.parse(atom.args[0])
        return lambda x: spec.compare(x, e) == 0
    if name == "coset":
        n, a = int(atom.args[0]), spec.parse(atom.args[1])
        if spec.is_divisible:
            return lambda x: True
        if spec.kind == "int":
            return lambda x: (x - a) % n == 0
        return lambda x: spec.in_nM(spec.sub(x, a), n)
    if name == "interval":
        lo = parse_endpoint(spec, atom.args[0])
        hi = parse_endpoint(spec, atom.args[1])
        above = below = None
        if lo.value is not None:
            c_lo, lo_min = _endpoint_comparator(spec, lo), 0 if lo.closed else 1
            above = lambda x: c_lo(x) >= lo_min  # noqa: E731
        if hi.value is not None:
            c_hi, hi_max = _endpoint_comparator(spec, hi), 0 if hi.closed else -1
            below = lambda x: c_hi(x) <= hi_max  # noqa: E731
        if above and below:
            return lambda x: above(x) and below(x)
        return above or below or (lambda x: True)
    raise ValueError(f"atom {name!r} has no ordered-group semantics")


def atom_member(spec: GroupSpec, atom: Atom, x) -> bool:
    return compile_atom(spec, atom)(x)


def point_eval(e: Expr, x, atom_fn: Callable) -> bool:
    if isinstance(e, Atom):
        return atom_fn(e, x)
    if isinstance(e, Not):
        return not point_eval(e.arg, x, atom_fn)
    a = point_eval(e.left, x, atom_fn)
    b = point_eval(e.right, x, atom_fn)
    return {"|": a or b, "&": a and b, "\\": a and not b}[e.op]


def predicate(e: Expr, atom_compiler: Callable) -> Callable:
    """Pointwise membership test for ``e``; each atom is compiled once."""
    cache: dict = {}

    def atom_fn(a, x):
        f = cache.get(a)
        if f is None:
            f = cache[a] = atom_compiler(a)
        return f(x)

    return lambda x: point_eval(e, x, atom_fn)


def ordered_predicate(spec: GroupSpec, e: Expr) -> Callable:
    return predicate(e, lambda a: compile_atom(spec, a))


class WindowEvaluator:
    """Pointwise truth values of ordered-group expressions on a fixed list of points.

    Comparisons of the points with each endpoint are computed once and reused by
    every interval atom that mentions that endpoint.
    """

    def __init__(self, spec: GroupSpec, pts: list):
        self.spec, self.pts = spec, pts
        self._signs: dict = {}
        self._atoms: dict = {}

    def _endpoint_signs(self, text: str) -> tuple:
        got = self._signs.get(text)
        if got is None:
            ep = parse_endpoint(self.spec, text)
            f = _endpoint_comparator(self.spec, ep)
            got = self._signs[text] = (ep.closed, [f(x) for x in self.pts])
        return got

    def atom(self, t: Atom) -> list:
        bits = self._atoms.get(t)
        if bits is not None:
            return bits
        if t.name == "interval":
            n = len(self.pts)
            lo, hi = parse_endpoint(self.spec, t.args[0]), parse_endpoint(self.spec, t.args[1])
            ok_lo = [True] * n
            ok_hi = [True] * n
            if lo.value is not None:
                closed, signs = self._endpoint_signs(t.args[0])
                least = 0 if closed else 1
                ok_lo = [s >= least for s in signs]
            if hi.value is not None:
                closed, signs = self._endpoint_signs(t.args[1])
                most = 0 if closed else -1
                ok_hi = [s <= most for s in signs]
            bits = [p and q for p, q in zip(ok_lo, ok_hi)]
        else:
            f = compile_atom(self.spec, t)
            bits = [bool(f(x)) for x in self.pts]
        if len(self._atoms) > 50_000:
            self._atoms.clear()
        self._atoms[t] = bits
        return bits

    def __call__(self, e: Expr) -> list:
        return bitmap_eval(e, self.pts, atom_bits=self.atom)


def bitmap_eval(e: Expr, pts: list, atom_compiler: Callable = None, atom_bits: Callable = None) -> list:
    """Truth values of ``e`` on every point; each atom is evaluated once per point."""
    cache: dict = {}

    def go(t) -> list:
        if isinstance(t, Atom):
            if atom_bits is not None:
                return atom_bits(t)
            bits = cache.get(t)
            if bits is None:
                f = atom_compiler(t)
                bits = cache[t] = [bool(f(x)) for x in pts]
            return bits
        if isinstance(t, Not):
            return [not a for a in go(t.arg)]
        a, b = go(t.left), go(t.right)
        if t.op == "|":
            return [x or y for x, y in zip(a, b)]
        if t.op == "&":
            return [x and y for x, y in zip(a, b)]
        return [x and not y for x, y in zip(a, b)]

    return go(e)


def oracle_eval(e: Expr, w: Window) -> Bitmap:
    pts = enum_window(w)
    return Bitmap(pts, bitmap_eval(e, pts, lambda a: compile_atom(w.spec, a)))


# -- circles ----------------------------------------------------------------------

def circle_window(cspec, radius: int = 200, depth: int = 6) -> list:
    if cspec.kind == "salpha":
        return list(range(-radius, radius + 1))
    return [Fraction(k, 1 << depth) for k in range(1 << depth)]


def _arc_holds(cspec, p, j, q) -> bool:
    if p == q:
        return j != p
    return cspec.cyclic_check(p, j, q)


def circle_atom_member(cspec, atom: Atom, t) -> bool:
    name = atom.name
    if name == "all":
        return True
    if name == "empty":
        return False
    if name == "point":
        return t == cspec.parse(atom.args[0])
    if name == "coset":
        n, a = int(atom.args[0]), cspec.parse(atom.args[1])
        return cspec.in_nM(cspec.sub(t, a), n)
    if name == "arc":
        p, q = cspec.parse(atom.args[0]), cspec.parse(atom.args[1])
        n = int(atom.args[2]) if len(atom.args) > 2 else 1
        a = cspec.parse(atom.args[3]) if len(atom.args) > 3 else cspec.zero
        d = cspec.sub(t, a)
        if cspec.kind == "salpha":
            return d % n == 0 and _arc_holds(cspec, p, d // n, q)
        for i in range(n):
            j = (d + i) / n
            if j.denominator & (j.denominator - 1) == 0 and _arc_holds(cspec, p, cspec.element(j), q):
                return True
        return False
    raise ValueError(f"atom {name!r} has no circle semantics")


def circle_predicate(cspec, e: Expr) -> Callable:
    return predicate(e, lambda a: (lambda t: circle_atom_member(cspec, a, t)))


def circle_oracle_eval(e: Expr, cspec, pts) -> Bitmap:
    f = circle_predicate(cspec, e)
    return Bitmap(list(pts), [f(t) for t in pts])


# -- p-adic ---------------------------------------------------------------------------

def _val(x: Fraction, p: int):
    if x == 0:
        return None
    v, num, den = 0, abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def nth_power_oracle(x, n: int, p: int) -> bool:
    """Search y with v(y^n - x) >= v(x) + 2*v_p(n) + 1."""
    x = Fraction(x)
    v = _val(x, p)
    if v % n:
        return False
    k = _val(Fraction(n), p)
    need = v + 2 * k + 1
    base = Fraction(p) ** (v // n)
    for w in range(1, p ** (2 * k + 1) + 1):
        if w % p == 0:
            continue
        d = (base * w) ** n - x
        if d == 0 or _val(d, p) >= need:
            return True
    return False


def power_index_oracle(n: int, p: int) -> int:
    e = 2 * _val(Fraction(n), p) + 1
    reps: list = []
    for j in range(n):
        for u in range(1, p ** e):
            if u % p == 0:
                continue
            x = Fraction(u * p ** j)
            if not any(nth_power_oracle(x / r, n, p) for r in reps):
                reps.append(x)
    return len(reps)


# -- regular subgroups by definition --------------------------------------------

def _dense_witness(spec: GroupSpec, n: int, x, y, search: int = 400):
    # an element of nM strictly between x < y
    if spec.kind in ("rat", "lexrat"):
        return _mid(spec, x, y)
    if spec.kind == "dyadic":
        m = spec.effective_modulus(n)
        d = 1
        while d < 1 << 30:
            lo = x * d / m
            k = lo.numerator // lo.denominator + 1
            z = Fraction(k * m, d)
            if z < y:
                return z
            d *= 2
        return None
    for q in range(-search, search + 1):
        qa = spec.real_value((0, n * q))
        lo = spec.real_value(x) - qa
        # smallest multiple of n above lo
        p = (real_floor(lo) // n + 1) * n
        z = (p, n * q)
        if spec.compare(x, z) < 0 and spec.compare(z, y) < 0:
            return z
    return None


def _mid(spec, x, y):
    if spec.is_lex:
        return tuple((a + b) / 2 for a, b in zip(x, y))
    return (x + y) / 2


def rn_oracle(spec: GroupSpec, n: int, pts: list) -> dict:
    """Membership in R_n for each window element, read off the definition.

    Only intervals made of window elements are examined.  Discrete kinds use
    runs of n consecutive elements; dense kinds need an n-divisible element
    strictly between any two window points.
    """
    pts = spec.sorted(pts)
    zero = spec.zero
    result = {}
    if spec.is_discrete:
        unit = spec.unit
        runs = []
        for i in range(len(pts) - n + 1):
            run = pts[i:i + n]
            if all(spec.sub(run[t + 1], run[t]) == unit for t in range(n - 1)):
                runs.append(run)
        for a in pts:
            top = a if spec.compare(a, zero) >= 0 else spec.neg(a)
            ok = True
            for run in runs:
                if spec.compare(run[0], zero) >= 0 and spec.compare(run[-1], top) <= 0:
                    if not any(spec.in_nM(z, n) for z in run):
                        ok = False
                        break
            result[a] = ok
        return result
    gaps_ok = True
    for x, y in zip(pts, pts[1:]):
        if _dense_witness(spec, n, x, y) is None:
            gaps_ok = False
            break
    return {a: gaps_ok for a in pts}


def rn_index_oracle(spec: GroupSpec, n: int, interval: list, a) -> bool:
    """Whether a run of window elements meets a + nR_n (here R_n is given by the definition)."""
    return any(spec.in_nM(spec.sub(x, a), n) for x in interval)


# -- the relation E by definition -------------------------------------------------

def related_oracle(spec: GroupSpec, member: Callable, a, b, n: int, below: list, above: list,
                   inside: Callable, same_coset: Callable) -> bool:
    """E(a, b) by searching endpoints a' in ``below`` and b' in ``above``.

    ``inside(a', b')`` lists the window elements of the open interval (a', b');
    ``same_coset`` decides clause 1.
    """
    if spec.compare(a, b) == 0:
        return True
    if spec.compare(a, b) > 0:
        a, b = b, a
    for a1 in below:
        if spec.compare(a1, a) >= 0:
            continue
        for b1 in above:
            if spec.compare(b1, b) <= 0 or not same_coset(a1, b1):
                continue
            if spec.is_discrete:
                if len([x for x in inside(a1, a)]) < n or len([x for x in inside(b, b1)]) < n:
                    continue
            status: dict = {}
            ok = True
            for x in inside(a1, b1):
                r = spec.residue(x, n)
                m = member(x)
                if status.setdefault(r, m) != m:
                    ok = False
                    break
            if ok:
                return True
    return False


# -- random instances ---------------------------------------------------------------

MODULI = (1, 2, 3, 4, 6)


def _rand_value(rng: random.Random, spec: GroupSpec) -> str:
    kind = spec.kind
    if kind == "int":
        return str(rng.randint(-20, 20))
    if kind == "rat":
        return str(Fraction(rng.randint(-20, 20), rng.choice((1, 2, 3, 4))))
    if kind == "dyadic":
        return str(Fraction(rng.randint(-20, 20), rng.choice((1, 2, 4))))
    if kind == "zalpha":
        p, q = rng.randint(-3, 3), rng.randint(-3, 3)
        return spec.format((p, q))
    if kind == "lexint":
        return "(" + ",".join(str(rng.randint(-6, 6)) for _ in range(spec.k)) + ")"
    return "(" + ",".join(str(Fraction(rng.randint(-6, 6), rng.choice((1, 2)))) for _ in range(spec.k)) + ")"


def _rand_endpoint(rng: random.Random, spec: GroupSpec, irrational: bool) -> str:
    if rng.random() < 0.15:
        return "inf"
    closed = rng.random() < 0.5
    if spec.is_lex and rng.random() < 0.3:
        j = rng.randint(1, spec.k - 1) if spec.k > 1 else 0
        if j:
            conv = (lambda: str(rng.randint(-4, 4))) if spec.kind == "lexint" else \
                (lambda: str(Fraction(rng.randint(-6, 6), rng.choice((1, 2)))))
            body = "(" + ",".join(conv() for _ in range(j)) + ")*"
            return f"[{body}]" if closed else f"({body})"
    if irrational and spec.kind in ("rat", "zalpha") and rng.random() < 0.2:
        body = rng.choice(("(0+1*sqrt(2))/1", "(1-1*sqrt(2))/1", "(-3+1*sqrt(5))/2", "(1+1*sqrt(5))/1"))
    else:
        body = _rand_value(rng, spec)
    return f"[{body}]" if closed else f"({body})"


def random_atom_expr(rng: random.Random, spec: GroupSpec, moduli=MODULI, irrational: bool = True) -> Expr:
    r = rng.random()
    if r < 0.1:
        return Atom("point", (_rand_value(rng, spec),))
    lo = _rand_endpoint(rng, spec, irrational)
    hi = _rand_endpoint(rng, spec, irrational)
    lo = "-inf" if lo == "inf" else lo
    hi = "+inf" if hi == "inf" else hi
    interval = Atom("interval", (lo, hi))
    n = rng.choice(moduli)
    if n == 1:
        return interval
    return Bin("&", interval, Atom("coset", (str(n), _rand_value(rng, spec))))


def random_expr(rng: random.Random, spec: GroupSpec, pieces: int = 3, moduli=MODULI,
                irrational: bool = True) -> Expr:
    """A union of up to ``pieces`` cnc atoms, sometimes complemented."""
    k = rng.randint(1, pieces)
    e = random_atom_expr(rng, spec, moduli, irrational)
    for _ in range(k - 1):
        e = Bin("|", e, random_atom_expr(rng, spec, moduli, irrational))
    if rng.random() < 0.2:
        e = Not(e)
    return e


def random_arc_expr(rng: random.Random, cspec, pieces: int = 3) -> Expr:
    def val():
        if cspec.kind == "salpha":
            return str(rng.randint(-20, 20))
        return str(Fraction(rng.randrange(16), 16))

    def atom():
        r = rng.random()
        if r < 0.1:
            return Atom("point", (val(),))
        if r < 0.2:
            return Atom("coset", (str(rng.choice((2, 3))), val()))
        n = rng.choice((1, 1, 2, 3))
        return Atom("arc", (val(), val(), str(n), val()))

    e = atom()
    for _ in range(rng.randint(1, pieces) - 1):
        e = Bin("|", e, atom())
    if rng.random() < 0.2:
        e = Not(e)
    return e


def random_padic_set(rng: random.Random, p: int, pieces: int = 3, max_n: int = 4):
    from .padic import PAdicPiece, PAdicSet

    out = []
    for _ in range(rng.randint(1, pieces)):
        a = Fraction(rng.randint(-10, 10), rng.choice((1, p)))
        b = Fraction(rng.choice((1, -1, 2, p)))
        n = rng.randint(1, max_n)
        ball = None
        if rng.random() < 0.4:
            ball = (Fraction(rng.randint(-5, 5)), rng.randint(-1, 4))
        out.append(PAdicPiece(a, b, n, ball))
    return PAdicSet(p, out)


def random_instance(seed: int, spec, kind: str = "cnc", **params):
    """Reproducible random CncSet, ArcSet or PAdicSet (``kind`` = cnc | arc | padic)."""
    rng = random.Random(seed)
    if kind == "cnc":
        from .expr import eval_cnc

        return eval_cnc(random_expr(rng, spec, **params), spec)
    if kind == "arc":
        from .expr import eval_arc

        return eval_arc(random_arc_expr(rng, spec, **params), spec)
    if kind == "padic":
        return random_padic_set(rng, spec, **params)
    raise ValueError(f"unknown instance kind {kind!r}")


def describe(e: Expr) -> str:
    return to_text(e)
