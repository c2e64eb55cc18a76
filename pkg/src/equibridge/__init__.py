"""Exact invariants of strongly invertible 2-bridge knots.

Computes butterfly polynomials, axis-linking numbers, nullity obstructions
and moth polynomials, together with machine-checkable certificates that a
knot is not equivariantly slice and has infinite equivariant concordance
order.
"""

__version__ = "0.1.0"
