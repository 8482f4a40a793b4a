"""Labeled interval signatures of ordinal-sum t-norms.

The signature of a t-norm collects its Product pieces, its Lukasiewicz
pieces, and the maximal open intervals consisting of idempotents
(labeled M), ordered left to right.  Two continuous t-norms of this
class are isomorphic exactly when their signatures admit a
label-preserving order isomorphism, so the signature is the whole
story; everything downstream (isomorphism decisions, relational
encodings) reads it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .tnorm import PieceGenerator, PreconditionError, TNorm

__all__ = [
    "Label",
    "SignatureEntry",
    "Signature",
    "prec",
    "is_dense_cover",
    "compute_signature",
    "format_signature",
]


class Label(Enum):
    P = "P"
    L = "L"
    M = "M"


@dataclass(frozen=True)
class SignatureEntry:
    lo: Fraction
    hi: Fraction
    label: Label

    def __post_init__(self):
        if not 0 <= self.lo < self.hi <= 1:
            raise ValueError(f"bad entry interval ({self.lo}, {self.hi})")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def interval(self) -> tuple[Fraction, Fraction]:
        return (self.lo, self.hi)


def prec(e1: SignatureEntry, e2: SignatureEntry) -> bool:
    """Strict left-to-right order on disjoint entries."""
    if e1.hi <= e2.lo:
        return True
    if e2.hi <= e1.lo:
        return False
    raise ValueError(f"entries overlap: ({e1.lo}, {e1.hi}) and ({e2.lo}, {e2.hi})")


@dataclass(frozen=True)
class Signature:
    """Entries sorted left to right; complete or truncated at a depth."""

    entries: tuple[SignatureEntry, ...]
    complete: bool
    truncation_depth: int | None = None

    def __post_init__(self):
        ordered = tuple(sorted(self.entries, key=lambda e: e.lo))
        object.__setattr__(self, "entries", ordered)
        for a, b in zip(ordered, ordered[1:]):
            if a.hi > b.lo:
                raise ValueError(f"entries overlap: ({a.lo}, {a.hi}) and ({b.lo}, {b.hi})")
            if a.hi == b.lo and a.label is Label.M and b.label is Label.M:
                raise ValueError("two adjacent M entries would merge; signature malformed")
        if self.complete and self.truncation_depth is not None:
            raise ValueError("complete signatures carry no truncation depth")
        if not self.complete and self.truncation_depth is None:
            raise ValueError("truncated signatures must state their depth")

    def labels(self) -> tuple[Label, ...]:
        return tuple(e.label for e in self.entries)


def is_dense_cover(entries) -> bool:
    """True iff entries are nonempty, pairwise disjoint, and their closures cover [0, 1]."""
    items = sorted(entries, key=lambda e: e.lo)
    if not items:
        return False
    if items[0].lo != 0 or items[-1].hi != 1:
        return False
    for a, b in zip(items, items[1:]):
        if a.hi != b.lo:
            return False
    return True


def compute_signature(t: TNorm, depth: int | None = None) -> Signature:
    """Signature of t: exact for finite presentations, truncated for lazy ones.

    A truncated signature lists the first `depth` generated pieces plus
    only those idempotent intervals the generator certifies as final;
    deeper pieces can only subdivide territory not yet claimed.
    """
    if t.is_finite:
        entries = [
            SignatureEntry(p.lo, p.hi, Label(p.kind.value)) for p in t.presentation.pieces
        ]
        entries.extend(SignatureEntry(lo, hi, Label.M) for lo, hi in t.presentation.gaps())
        return Signature(tuple(entries), complete=True)
    if depth is None or depth < 1:
        raise PreconditionError("lazy signatures need a positive truncation depth")
    gen: PieceGenerator = t.presentation
    entries = [
        SignatureEntry(p.lo, p.hi, Label(p.kind.value))
        for p in (gen.piece_at(k) for k in range(depth))
    ]
    entries.extend(SignatureEntry(lo, hi, Label.M) for lo, hi in gen.certified_m_gaps(depth))
    return Signature(tuple(entries), complete=False, truncation_depth=depth)


def format_signature(sig: Signature) -> str:
    depth = "-" if sig.truncation_depth is None else str(sig.truncation_depth)
    lines = [f"signature v1 complete={'true' if sig.complete else 'false'} depth={depth}"]
    for e in sig.entries:
        lines.append(f"{e.label.value} {e.lo} {e.hi}")
    return "\n".join(lines) + "\n"
