"""Multiplicity structure of arc spaces of fat points.

Truncated differential ideals, their Groebner bases and quotient dimensions,
fair-monomial combinatorics, and the exterior-algebra embedding used as an
independent membership oracle.
"""

from .diffpoly import (
    DMono,
    DPoly,
    DVar,
    OrderKind,
    compare,
    derive,
    leading_monomial,
    substitute_sum,
)

__all__ = [
    "DMono",
    "DPoly",
    "DVar",
    "OrderKind",
    "compare",
    "derive",
    "leading_monomial",
    "substitute_sum",
]

__version__ = "0.1.0"
