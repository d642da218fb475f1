"""Convex subgroups, the regular subgroups R_n, quotients and pullbacks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cnc import CncSet
from .cuts import ConvexSet, Cut, cut_at
from .groups import ConvexSubgroup, GroupSpec
from .quadirr import QuadIrr


def convex_subgroups(spec: GroupSpec) -> list:
    """All convex subgroups, from {0} up to the whole group."""
    top = spec.k if spec.is_lex else 1
    return [ConvexSubgroup(spec, j) for j in range(top, -1, -1)]


def regular_subgroup(spec: GroupSpec, n: int) -> ConvexSubgroup:
    """R_n: the largest convex subgroup in which every interval with n elements meets nM."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1 or spec.kind != "lexint" or spec.k == 1:
        return ConvexSubgroup(spec, 0)
    # a class (0,..,0,1,*) interval has n consecutive elements and no n-divisible one
    return ConvexSubgroup(spec, spec.k - 1)


@dataclass(frozen=True)
class QuotientMap:
    domain: GroupSpec
    H: ConvexSubgroup

    def __post_init__(self):
        if self.H.spec != self.domain:
            raise ValueError("subgroup belongs to a different group")
        if self.H.is_whole:
            raise ValueError("quotient by the whole group is trivial")

    @property
    def codomain(self) -> GroupSpec:
        dom, j = self.domain, self.H.j
        if not dom.is_lex or j == dom.k:
            return dom
        if j == 1:
            return GroupSpec("int" if dom.kind == "lexint" else "rat")
        return GroupSpec(dom.kind, j)

    def __call__(self, x):
        return quotient(self, x)


def quotient(qmap: QuotientMap, x):
    dom, cod = qmap.domain, qmap.codomain
    x = dom.element(x)
    if cod == dom:
        return x
    head = x[: qmap.H.j]
    return head[0] if not cod.is_lex else head


def _pull_cut(qmap: QuotientMap, c: Cut) -> Cut:
    if c.is_infinite:
        return c
    dom, cod = qmap.domain, qmap.codomain
    if c.kind == "principal":
        t, closed = (c.value if cod.is_lex else (c.value,)), True
    elif c.kind == "gap":
        if not cod.is_lex and isinstance(c.value, QuadIrr):
            raise NotImplementedError("irrational cut points do not lift to rational prefixes")
        t, closed = (c.value if cod.is_lex else (Fraction(c.value),)), False
    else:
        t, closed = c.value, c.closed
    return cut_at(dom, t, closed)


def pullback(qmap: QuotientMap, Y: CncSet) -> CncSet:
    """The preimage of Y under the quotient map, in canonical form."""
    dom, cod = qmap.domain, qmap.codomain
    if Y.spec != cod:
        raise ValueError(f"set lives in {Y.spec}, expected {cod}")
    if cod == dom:
        return Y
    n = dom.effective_modulus(Y.modulus)
    classes: dict = {}
    for r in dom.residues(n):
        rho = cod.residue(quotient(qmap, r), Y.modulus)
        ps = Y.classes.get(rho)
        if ps:
            classes[r] = [ConvexSet(_pull_cut(qmap, C.lower), _pull_cut(qmap, C.upper)) for C in ps]
    return CncSet.from_classes(dom, n, classes)
