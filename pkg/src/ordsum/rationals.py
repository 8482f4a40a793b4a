"""Canonical enumeration of the rationals in [0, 1].

The fixed enumeration used everywhere in this package lists reduced
fractions by increasing denominator, then increasing numerator:

    q_0 = 0, q_1 = 1, q_2 = 1/2, q_3 = 1/3, q_4 = 2/3, q_5 = 1/4, q_6 = 3/4, ...

Denominator 1 contributes 0 and 1; denominator d >= 2 contributes its
phi(d) reduced numerators in ascending order.  Every rational in [0, 1]
appears exactly once, so the enumeration has an exact inverse
(`rational_index`) and a least-index search over intervals
(`min_index_in`).  All arithmetic is `fractions.Fraction`; nothing here
is approximate.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from fractions import Fraction
from math import gcd

__all__ = [
    "check_unit",
    "parse_rational",
    "format_rational",
    "rational_at",
    "rational_index",
    "min_entry_in",
    "min_index_in",
    "fractions_up_to",
    "count_up_to",
]

_RATIONAL_RE = re.compile(r"^(\d+)(?:/(\d+))?$")

# Sieve caches, grown on demand.  _cum[d] counts enumeration entries with
# denominator <= d, so _cum[1] == 2 and _cum[d] == _cum[d-1] + phi(d).
_phi: list[int] = [0, 1]
_cum: list[int] = [0, 2]


def check_unit(q: Fraction) -> Fraction:
    """Return q unchanged, raising ValueError unless 0 <= q <= 1."""
    if not isinstance(q, Fraction):
        raise ValueError(f"expected a Fraction, got {q!r}")
    if q < 0 or q > 1:
        raise ValueError(f"{q} lies outside [0, 1]")
    return q


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (lowest terms not required) or a bare integer."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """Render lowest-terms "p/q"; integers render without "/1"."""
    return str(q)


def _grow(limit: int) -> None:
    global _phi, _cum
    if limit < len(_phi):
        return
    n = max(limit, 2 * (len(_phi) - 1), 1024)
    phi = list(range(n + 1))
    for p in range(2, n + 1):
        if phi[p] == p:  # p is prime; sieve out its factor from all multiples
            for m in range(p, n + 1, p):
                phi[m] -= phi[m] // p
    cum = [0] * (n + 1)
    if n >= 1:
        cum[1] = 2
    for d in range(2, n + 1):
        cum[d] = cum[d - 1] + phi[d]
    _phi, _cum = phi, cum


def rational_at(n: int) -> Fraction:
    """Return q_n, the n-th rational of the enumeration."""
    if n < 0:
        raise ValueError("index must be a natural number")
    if n == 0:
        return Fraction(0)
    if n == 1:
        return Fraction(1)
    while _cum[-1] <= n:
        _grow(2 * (len(_cum) - 1))
    d = bisect_right(_cum, n)
    offset = n - _cum[d - 1]
    seen = 0
    for p in range(1, d):
        if gcd(p, d) == 1:
            if seen == offset:
                return Fraction(p, d)
            seen += 1
    raise AssertionError("enumeration bookkeeping out of sync")


def _distinct_prime_factors(d: int) -> list[int]:
    out = []
    if d % 2 == 0:
        out.append(2)
        while d % 2 == 0:
            d //= 2
    f = 3
    while f * f <= d:
        if d % f == 0:
            out.append(f)
            while d % f == 0:
                d //= f
        f += 2
    if d > 1:
        out.append(d)
    return out


def _coprimes_below(p: int, d: int) -> int:
    """Count integers in [1, p) coprime to d, by inclusion-exclusion."""
    primes = _distinct_prime_factors(d)
    total = 0
    for mask in range(1 << len(primes)):
        prod = 1
        bits = 0
        m = mask
        i = 0
        while m:
            if m & 1:
                prod *= primes[i]
                bits += 1
            m >>= 1
            i += 1
        term = (p - 1) // prod
        total += -term if bits % 2 else term
    return total


def rational_index(q: Fraction) -> int:
    """Inverse of `rational_at`: the unique n with q_n == q."""
    check_unit(q)
    d = q.denominator
    if d == 1:
        return q.numerator
    _grow(d)
    return _cum[d - 1] + _coprimes_below(q.numerator, d)


def min_entry_in(
    lo: Fraction, hi: Fraction, closed: bool = False
) -> tuple[int, Fraction]:
    """Least-index enumeration entry in (lo, hi), or [lo, hi] when closed.

    Returns (index, value).  Scans the enumeration in its own order
    (denominator-major, then numerator); denominators whose numerator
    window is empty cost O(1), so deep thin intervals stay affordable.
    A nonempty interval always contains a rational of denominator
    <= ceil(1/(hi-lo)) + 1, so the scan terminates.
    """
    check_unit(lo)
    check_unit(hi)
    if lo >= hi:
        raise ValueError("interval must satisfy lo < hi")
    a, b = lo.numerator, lo.denominator
    c, e = hi.numerator, hi.denominator
    d = 1
    while True:
        if closed:
            p_min = -(-(a * d) // b)  # ceil(a*d/b)
            p_max = (c * d) // e
        else:
            p_min = (a * d) // b + 1
            p_max = (c * d - 1) // e
        for p in range(p_min, p_max + 1):
            if gcd(p, d) == 1:
                q = Fraction(p, d)
                return rational_index(q), q
        d += 1


def min_index_in(lo: Fraction, hi: Fraction, closed: bool = False) -> int:
    """Least n with q_n in the interval (lo, hi), or [lo, hi] when closed."""
    return min_entry_in(lo, hi, closed)[0]


def fractions_up_to(max_denominator: int) -> list[tuple[Fraction, int]]:
    """All enumeration entries with denominator <= max_denominator.

    Returns (value, index) pairs sorted by value; used for bounded
    quantifier scans over "every rational of denominator <= D".
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    _grow(max_denominator)
    items = [(Fraction(0), 0), (Fraction(1), 1)]
    for d in range(2, max_denominator + 1):
        base = _cum[d - 1]
        k = 0
        for p in range(1, d):
            if gcd(p, d) == 1:
                items.append((Fraction(p, d), base + k))
                k += 1
    items.sort(key=lambda item: item[0])
    return items


def count_up_to(max_denominator: int) -> int:
    """How many enumeration entries have denominator <= max_denominator."""
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    _grow(max_denominator)
    return _cum[max_denominator]
