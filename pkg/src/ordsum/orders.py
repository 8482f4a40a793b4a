"""Linear orders on an initial segment of the naturals, and their t-norms.

A strict linear order on {0, 1, 2, ...} is turned into a t-norm by
assigning element n an open interval I_n of length 3^-(n+1), placed in
the middle of the window its already-placed neighbors leave open:

    x_n = max({0} union {b_k : k below n, k < n})
    y_n = min({a_k : n below k, k < n} union {1})
    a_n = (x_n + y_n - 3^-(n+1)) / 2,  b_n = a_n + 3^-(n+1)

Each I_n carries a Product piece.  The placement embeds the order:
m below n holds exactly when b_m < a_n, and the windows never collapse,
so truncating after N pieces changes the operation by at most
2 * sum of the remaining lengths = 3^-N.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction

from .rationals import check_unit, rational_at
from .signature import Label, SignatureEntry
from .tnorm import (
    IDEMPOTENT,
    FinitePresentation,
    InPiece,
    Piece,
    PieceGenerator,
    PieceKind,
    PreconditionError,
    StructuralFacts,
    TNorm,
    UnknownAtDepth,
)

__all__ = [
    "LinearOrder",
    "FiniteOrder",
    "OmegaOrder",
    "OmegaStarOrder",
    "ZetaOrder",
    "EtaOrder",
    "OmegaPlusOmegaStarOrder",
    "NAMED_ORDERS",
    "parse_order",
    "build_intervals",
    "OrderPieceGenerator",
    "order_tnorm",
    "sampled_distance",
    "agreement_ball_check",
]


class LinearOrder(ABC):
    """Strict linear order on {0..size-1}, or on all naturals when size is None.

    The structural attributes are certificates: for every order shipped
    here, `min_element`/`max_element` are the actual extremes or None
    exactly when no extreme exists, `dense` states order density, and
    `adjacent(m, n)` decides immediate succession.
    """

    name: str
    size: int | None = None
    min_element: int | None = None
    max_element: int | None = None
    dense: bool = False

    @abstractmethod
    def less(self, m: int, n: int) -> bool:
        raise NotImplementedError

    @abstractmethod
    def adjacent(self, m: int, n: int) -> bool:
        """Whether m lies immediately below n with nothing between."""
        raise NotImplementedError

    def _check_index(self, n: int) -> None:
        if n < 0:
            raise PreconditionError(f"negative element {n}")
        if self.size is not None and n >= self.size:
            raise PreconditionError(f"element {n} outside finite order of size {self.size}")

    def cmp(self, m: int, n: int) -> int:
        self._check_index(m)
        self._check_index(n)
        if m == n:
            return 0
        return -1 if self.less(m, n) else 1


class OmegaOrder(LinearOrder):
    """The naturals in their usual order."""

    name = "omega"
    min_element = 0

    def less(self, m, n):
        return m < n

    def adjacent(self, m, n):
        return n == m + 1


class OmegaStarOrder(LinearOrder):
    """The naturals reversed: every element has 0 above it eventually."""

    name = "omega_star"
    max_element = 0

    def less(self, m, n):
        return m > n

    def adjacent(self, m, n):
        return n == m - 1


def _zeta_image(n: int) -> int:
    return n // 2 if n % 2 == 0 else -(n + 1) // 2


class ZetaOrder(LinearOrder):
    """Order type of the integers: evens code 0, 1, 2, ...; odds code -1, -2, ..."""

    name = "zeta"

    def less(self, m, n):
        return _zeta_image(m) < _zeta_image(n)

    def adjacent(self, m, n):
        return _zeta_image(n) == _zeta_image(m) + 1


class EtaOrder(LinearOrder):
    """Dense order without endpoints: n compares as the rational q_{n+2}."""

    name = "eta"
    dense = True

    def less(self, m, n):
        return rational_at(m + 2) < rational_at(n + 2)

    def adjacent(self, m, n):
        return False


class OmegaPlusOmegaStarOrder(LinearOrder):
    """Evens ascending below all odds, odds descending above: 0, 2, 4, ... 5, 3, 1."""

    name = "omega_plus_omega_star"
    min_element = 0
    max_element = 1

    @staticmethod
    def _key(n: int) -> tuple[int, int]:
        return (0, n) if n % 2 == 0 else (1, -n)

    def less(self, m, n):
        return self._key(m) < self._key(n)

    def adjacent(self, m, n):
        if m % 2 == 0 and n % 2 == 0:
            return n == m + 2
        if m % 2 == 1 and n % 2 == 1:
            return n == m - 2
        return False


class FiniteOrder(LinearOrder):
    """Order on {0..k-1} where ranks[i] is the rank of element i."""

    def __init__(self, ranks):
        ranks = tuple(int(r) for r in ranks)
        if not ranks:
            raise PreconditionError("finite order needs at least one element")
        if len(set(ranks)) != len(ranks) or any(r < 0 for r in ranks):
            raise PreconditionError(f"ranks must be distinct naturals, got {ranks}")
        self.ranks = ranks
        self.size = len(ranks)
        ordered = sorted(range(self.size), key=lambda i: ranks[i])
        self._position = {elt: pos for pos, elt in enumerate(ordered)}
        self.min_element = ordered[0]
        self.max_element = ordered[-1]
        self.name = "finite:" + ",".join(str(r) for r in ranks)

    def less(self, m, n):
        self._check_index(m)
        self._check_index(n)
        return self.ranks[m] < self.ranks[n]

    def adjacent(self, m, n):
        return self._position[n] == self._position[m] + 1


NAMED_ORDERS = {
    cls.name: cls
    for cls in (OmegaOrder, OmegaStarOrder, ZetaOrder, EtaOrder, OmegaPlusOmegaStarOrder)
}


def parse_order(spec: str) -> LinearOrder:
    """Order spec strings: a named order or "finite:3,0,2,1"."""
    spec = spec.strip()
    if spec in NAMED_ORDERS:
        return NAMED_ORDERS[spec]()
    if spec.startswith("finite:"):
        body = spec[len("finite:"):]
        try:
            ranks = [int(part) for part in body.split(",")]
        except ValueError:
            raise ValueError(f"bad finite order spec: {spec!r}") from None
        return FiniteOrder(ranks)
    raise ValueError(f"unknown order spec: {spec!r}")


def build_intervals(order: LinearOrder, count: int) -> list[tuple[Fraction, Fraction]]:
    """The first `count` intervals (a_n, b_n) assigned to 0..count-1."""
    if count < 1:
        raise PreconditionError("need at least one interval")
    if order.size is not None and count > order.size:
        raise PreconditionError(f"order has only {order.size} elements")
    a: list[Fraction] = []
    b: list[Fraction] = []
    for n in range(count):
        x = Fraction(0)
        y = Fraction(1)
        for k in range(n):
            if order.less(k, n):
                x = max(x, b[k])
            else:
                y = min(y, a[k])
        eps = Fraction(1, 3 ** (n + 1))
        a.append((x + y - eps) / 2)
        b.append((x + y + eps) / 2)
    return list(zip(a, b))


class OrderPieceGenerator(PieceGenerator):
    """Lazy pieces for an infinite order; piece n is I_n with Product label."""

    kind = PieceKind.PRODUCT

    def __init__(self, order: LinearOrder):
        if order.size is not None:
            raise PreconditionError("finite orders yield finite presentations directly")
        self.order = order
        self._intervals: list[tuple[Fraction, Fraction]] = []
        self.fingerprint = ("theta", order.name)
        self.facts = StructuralFacts(
            has_min_piece=order.min_element is not None,
            has_max_piece=order.max_element is not None,
            dense_no_endpoints=(
                order.dense and order.min_element is None and order.max_element is None
            ),
        )

    def _extend(self, count: int) -> None:
        if count > len(self._intervals):
            self._intervals = build_intervals(self.order, count)

    def piece_at(self, n: int) -> Piece:
        if n < 0:
            raise PreconditionError(f"negative piece index {n}")
        self._extend(n + 1)
        lo, hi = self._intervals[n]
        return Piece(lo, hi, PieceKind.PRODUCT)

    def tail_length_bound(self, n: int) -> Fraction:
        # sum over k >= n of 3^-(k+1)
        return Fraction(1, 2 * 3**n)

    def _built_by_position(self, depth: int) -> list[int]:
        self._extend(depth)
        return sorted(range(depth), key=lambda k: self._intervals[k][0])

    def locate(self, q: Fraction, depth: int):
        check_unit(q)
        if depth < 1:
            raise PreconditionError("locate depth must be >= 1")
        if q == 0 or q == 1:
            return IDEMPOTENT
        self._extend(depth)
        for n in range(depth):
            lo, hi = self._intervals[n]
            if lo < q < hi:
                return InPiece(n, Piece(lo, hi, PieceKind.PRODUCT))
            if q == lo or q == hi:
                return IDEMPOTENT
        order = self.order
        by_pos = self._built_by_position(depth)
        left = None
        right = None
        for n in by_pos:
            if self._intervals[n][1] < q:
                left = n
            elif self._intervals[n][0] > q and right is None:
                right = n
        if left is None:
            if right is not None and right == order.min_element:
                return IDEMPOTENT
        elif right is None:
            if left == order.max_element:
                return IDEMPOTENT
        elif order.adjacent(left, right):
            return IDEMPOTENT
        return UnknownAtDepth(depth)

    def certified_m_gaps(self, depth: int) -> list[tuple[Fraction, Fraction]]:
        """Gaps between placed pieces that no later piece can enter.

        A gap between positionally consecutive pieces m, n is final exactly
        when m is immediately below n in the order; the outer gaps are
        final when the order's global extreme is already placed.
        """
        by_pos = self._built_by_position(depth)
        out: list[tuple[Fraction, Fraction]] = []
        first, last = by_pos[0], by_pos[-1]
        if first == self.order.min_element:
            out.append((Fraction(0), self._intervals[first][0]))
        for m, n in zip(by_pos, by_pos[1:]):
            if self.order.adjacent(m, n):
                out.append((self._intervals[m][1], self._intervals[n][0]))
        if last == self.order.max_element:
            out.append((self._intervals[last][1], Fraction(1)))
        return out

    def successor_pair(self, depth: int):
        gaps = self.certified_m_gaps(depth)
        if not gaps:
            return None
        lo, hi = gaps[0]
        gap_entry = SignatureEntry(lo, hi, Label.M)
        for n in range(depth):
            a, b = self._intervals[n]
            if b == lo:
                return (SignatureEntry(a, b, Label.P), gap_entry)
            if a == hi:
                return (gap_entry, SignatureEntry(a, b, Label.P))
        return None


def order_tnorm(order: LinearOrder) -> TNorm:
    """The t-norm encoding an order; finite orders yield finite presentations."""
    if order.size is not None:
        pieces = tuple(
            Piece(lo, hi, PieceKind.PRODUCT) for lo, hi in build_intervals(order, order.size)
        )
        return TNorm(FinitePresentation(pieces))
    return TNorm(OrderPieceGenerator(order))


def sampled_distance(t1: TNorm, t2: TNorm, grid: int) -> Fraction:
    """Max |t1 - t2| over the grid x grid lattice {i/(grid-1)}^2."""
    if grid < 2:
        raise PreconditionError("grid needs at least two sample points per axis")
    pts = [Fraction(i, grid - 1) for i in range(grid)]
    worst = Fraction(0)
    for x in pts:
        for y in pts:
            diff = abs(t1.eval(x, y) - t2.eval(x, y))
            if diff > worst:
                worst = diff
    return worst


def agreement_ball_check(o1: LinearOrder, o2: LinearOrder, n: int, grid: int) -> bool:
    """Orders agreeing on {0..n-1}^2 give t-norms within 3^-n, sampled.

    Raises PreconditionError when the orders actually disagree on the
    claimed square; otherwise compares deep truncations (n + 10 pieces)
    on the lattice against the exact bound 2 * sum_{k>=n} 3^-(k+1).
    """
    if n < 1:
        raise PreconditionError("agreement square must be nonempty")
    for m in range(n):
        for k in range(n):
            if m != k and o1.less(m, k) != o2.less(m, k):
                raise PreconditionError(
                    f"orders disagree on ({m}, {k}) inside the claimed {n}x{n} square"
                )

    def deep(order: LinearOrder) -> TNorm:
        t = order_tnorm(order)
        if t.is_finite:
            return t
        return t.truncation(n + 10)

    bound = Fraction(1, 3**n)
    return sampled_distance(deep(o1), deep(o2), grid) <= bound
