"""Exact algebra of unary definable sets.

Ordered abelian groups carry finite unions of convex-coset pieces in a
canonical form; cyclically ordered groups carry arc sets handled through their
universal cover; Q_p carries unions of power cosets cut down to balls.
"""
from .cnc import CncPiece, CncSet, NotASubgroup, boolean, canonicalize, subgroup_reduce
from .cuts import ConvexSet, Cut
from .cyclic import ArcSet, CyclicSpec, arc_boolean, arc_member, parse_circle
from .equiv import EquivContext, decompose, eclass, finite_classes, related
from .expr import eval_arc, eval_cnc, parse, to_text
from .groups import ConvexSubgroup, GroupSpec, parse_group
from .padic import PAdicPiece, PAdicSet, is_nth_power, power_index, valuation
from .quadirr import QuadIrr, quad_sign
from .subgroups import QuotientMap, convex_subgroups, pullback, regular_subgroup

__version__ = "0.1.0"

__all__ = [
    "ArcSet", "CncPiece", "CncSet", "ConvexSet", "ConvexSubgroup", "Cut", "CyclicSpec",
    "EquivContext", "GroupSpec", "NotASubgroup", "PAdicPiece", "PAdicSet", "QuadIrr",
    "QuotientMap", "arc_boolean", "arc_member", "boolean", "canonicalize", "convex_subgroups",
    "decompose", "eclass", "eval_arc", "eval_cnc", "finite_classes", "is_nth_power", "parse",
    "parse_circle", "parse_group", "power_index", "pullback", "quad_sign", "regular_subgroup",
    "related", "subgroup_reduce", "to_text", "valuation",
]
