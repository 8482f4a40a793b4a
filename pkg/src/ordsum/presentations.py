"""Reading and writing t-norm presentation files.

The format is line oriented.  The first line is the header "tnorm v1".
A finite presentation then lists one "piece <lo> <hi> <P|L>" line per
piece, while a lazy one names a single family:

    family limit-left
    family limit-right
    family theta <order-spec>
    family cantor <system-spec>

Rationals are written in lowest terms ("1/3", "0").  Anything else is
rejected with PresentationError.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .cantor import gap_tnorm, parse_system
from .families import LADDER_NAMES, ladder_tnorm
from .orders import order_tnorm, parse_order
from .tnorm import FinitePresentation, Piece, PieceKind, PreconditionError, TNorm

__all__ = [
    "PresentationError",
    "parse_presentation_text",
    "load_presentation",
    "format_presentation",
]

HEADER = "tnorm v1"


class PresentationError(ValueError):
    """A presentation file failed to parse."""


def _fraction(token: str, where: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise PresentationError(f"{where}: bad rational {token!r}") from None


def _build_family(args: list[str], where: str) -> TNorm:
    if not args:
        raise PresentationError(f"{where}: family needs a name")
    name, rest = args[0], args[1:]
    if name in LADDER_NAMES:
        if rest:
            raise PresentationError(f"{where}: {name} takes no arguments")
        return ladder_tnorm(name)
    if name == "theta":
        if len(rest) != 1:
            raise PresentationError(f"{where}: theta takes one order spec")
        try:
            return order_tnorm(parse_order(rest[0]))
        except ValueError as exc:
            raise PresentationError(f"{where}: {exc}") from None
    if name == "cantor":
        if len(rest) != 1:
            raise PresentationError(f"{where}: cantor takes one system spec")
        try:
            return gap_tnorm(parse_system(rest[0]))
        except ValueError as exc:
            raise PresentationError(f"{where}: {exc}") from None
    raise PresentationError(f"{where}: unknown family {name!r}")


def parse_presentation_text(text: str) -> TNorm:
    rows = [
        (i + 1, line.strip())
        for i, line in enumerate(text.splitlines())
        if line.strip()
    ]
    if not rows or rows[0][1] != HEADER:
        raise PresentationError(f'first line must be "{HEADER}"')
    pieces: list[Piece] = []
    family: TNorm | None = None
    for lineno, line in rows[1:]:
        where = f"line {lineno}"
        fields = line.split()
        if fields[0] == "piece":
            if family is not None:
                raise PresentationError(f"{where}: piece after a family line")
            if len(fields) != 4 or fields[3] not in ("P", "L"):
                raise PresentationError(f"{where}: want piece <lo> <hi> <P|L>")
            lo = _fraction(fields[1], where)
            hi = _fraction(fields[2], where)
            try:
                pieces.append(Piece(lo, hi, PieceKind(fields[3])))
            except ValueError as exc:
                raise PresentationError(f"{where}: {exc}") from None
        elif fields[0] == "family":
            if family is not None:
                raise PresentationError(f"{where}: second family line")
            if pieces:
                raise PresentationError(f"{where}: family after piece lines")
            family = _build_family(fields[1:], where)
        else:
            raise PresentationError(f"{where}: unknown directive {fields[0]!r}")
    if family is not None:
        return family
    try:
        return TNorm(FinitePresentation(tuple(pieces)))
    except ValueError as exc:
        raise PresentationError(str(exc)) from None


def load_presentation(path: str | Path) -> TNorm:
    return parse_presentation_text(Path(path).read_text())


def format_presentation(t: TNorm) -> str:
    lines = [HEADER]
    if t.is_finite:
        lines.extend(f"piece {p.lo} {p.hi} {p.kind.value}" for p in t.pieces)
    else:
        fp = t.generator.fingerprint
        if fp[0] in LADDER_NAMES:
            lines.append(f"family {fp[0]}")
        elif fp[0] == "theta":
            lines.append(f"family theta {fp[1]}")
        elif fp[0] == "cantor":
            lines.append(f"family cantor cantor:{fp[1]}")
        else:
            raise PreconditionError(f"no file form for family {fp!r}")
    return "\n".join(lines) + "\n"
