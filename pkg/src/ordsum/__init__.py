"""Ordinal-sum t-norms on [0, 1], exactly.

A t-norm here is presented as an ordinal sum: finitely or lazily many
disjoint open subintervals of [0, 1], each carrying a Product or
Lukasiewicz piece, with min(x, y) everywhere else.  The package
evaluates such operations with exact rational arithmetic, computes
labeled interval signatures, decides isomorphism from them, and encodes
both linear orders and Cantor-style gap systems as t-norms with
certified truncation error bounds.
"""

__version__ = "0.1.0"
