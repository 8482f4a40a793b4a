"""Infinite piece ladders accumulating at one endpoint of [0,1].

The left-anchored ladder puts Product pieces on (1 - 1/(n+1), 1 - 1/(n+2)),
so the rungs start at (0, 1/2) and climb toward 1; its signature has a
least entry and no greatest one.  The right-anchored ladder mirrors this
with pieces (1/(n+2), 1/(n+1)) descending toward 0.  Consecutive rungs
share endpoints, so no idempotent interval ever appears between them,
and the shared endpoints themselves are the successor witnesses.
"""

from __future__ import annotations

from fractions import Fraction

from .rationals import check_unit
from .signature import Label, SignatureEntry
from .tnorm import (
    IDEMPOTENT,
    InPiece,
    Piece,
    PieceGenerator,
    PieceKind,
    PreconditionError,
    StructuralFacts,
    TNorm,
)

__all__ = ["LadderGenerator", "ladder_tnorm", "LADDER_NAMES"]

LADDER_NAMES = ("limit-left", "limit-right")


class LadderGenerator(PieceGenerator):
    """Product rungs accumulating at 1 (limit-left) or at 0 (limit-right)."""

    kind = PieceKind.PRODUCT

    def __init__(self, anchor: str):
        if anchor not in LADDER_NAMES:
            raise ValueError(f"unknown ladder: {anchor!r}")
        self.anchor = anchor
        self.fingerprint = (anchor,)
        left = anchor == "limit-left"
        self.facts = StructuralFacts(
            has_min_piece=left,
            has_max_piece=not left,
            dense_no_endpoints=False,
        )

    def piece_at(self, n: int) -> Piece:
        if n < 0:
            raise PreconditionError(f"negative piece index {n}")
        lo = Fraction(1, n + 2)
        hi = Fraction(1, n + 1)
        if self.anchor == "limit-left":
            lo, hi = 1 - hi, 1 - lo
        return Piece(lo, hi, PieceKind.PRODUCT)

    def tail_length_bound(self, n: int) -> Fraction:
        # telescoping: sum over k >= n of (1/(k+1) - 1/(k+2))
        return Fraction(1, n + 1)

    def _rung_of(self, q: Fraction) -> int:
        """Index n with q in [piece_at(n).lo, piece_at(n).hi)."""
        if self.anchor == "limit-left":
            # 1 - 1/(n+1) <= q  <=>  n >= 1/(1-q) - 1
            frac = 1 / (1 - q)
        else:
            # q < 1/(n+1)  <=>  n < 1/q - 1; the rung holding q has
            # 1/(n+2) <= q, so n = ceil(1/q) - 2
            frac = 1 / q
        n = frac.numerator // frac.denominator
        if self.anchor == "limit-left":
            return n - 1
        if frac.denominator != 1:
            n += 1
        return n - 2

    def locate(self, q: Fraction, depth: int):
        """Closed-form placement; every unit rational resolves exactly."""
        check_unit(q)
        if q == 0 or q == 1:
            return IDEMPOTENT
        n = self._rung_of(q)
        piece = self.piece_at(n)
        if piece.contains_open(q):
            return InPiece(n, piece)
        return IDEMPOTENT

    def successor_pair(self, depth: int):
        if depth < 2:
            return None
        a = self.piece_at(1) if self.anchor == "limit-right" else self.piece_at(0)
        b = self.piece_at(0) if self.anchor == "limit-right" else self.piece_at(1)
        return (
            SignatureEntry(a.lo, a.hi, Label.P),
            SignatureEntry(b.lo, b.hi, Label.P),
        )


def ladder_tnorm(anchor: str) -> TNorm:
    return TNorm(LadderGenerator(anchor))
