"""Enumeration of rationals: oracle comparisons and frozen prefixes."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordsum.rationals import (
    count_up_to,
    format_rational,
    fractions_up_to,
    min_entry_in,
    min_index_in,
    parse_rational,
    rational_at,
    rational_index,
)


def brute_enumeration(max_denominator: int) -> list[Fraction]:
    """Independent oracle: reduced fractions sorted by (denominator, numerator)."""
    items = []
    for d in range(1, max_denominator + 1):
        for p in range(0, d + 1):
            if gcd(p, d) == 1 and (d == 1 or 0 < p < d):
                items.append((d, p))
    return [Fraction(p, d) for d, p in items]


def test_frozen_prefix():
    expected = [
        Fraction(0),
        Fraction(1),
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(2, 3),
        Fraction(1, 4),
        Fraction(3, 4),
    ]
    assert [rational_at(n) for n in range(7)] == expected


def test_matches_brute_oracle():
    oracle = brute_enumeration(40)
    assert [rational_at(n) for n in range(len(oracle))] == oracle


def test_round_trip_to_ten_thousand():
    for n in range(10_001):
        assert rational_index(rational_at(n)) == n


def test_distinct_prefix():
    seen = {rational_at(n) for n in range(2000)}
    assert len(seen) == 2000


def test_min_index_in_frozen_examples():
    assert min_index_in(Fraction(1, 3), Fraction(2, 3)) == 2
    assert min_index_in(Fraction(0), Fraction(1, 2), closed=True) == 0
    assert min_index_in(Fraction(1, 2), Fraction(1)) == 4


def rescan_min_index(lo: Fraction, hi: Fraction, closed: bool) -> int:
    n = 0
    while True:
        q = rational_at(n)
        inside = lo <= q <= hi if closed else lo < q < hi
        if inside:
            return n
        n += 1


@pytest.mark.parametrize("closed", [False, True])
def test_min_index_matches_rescan(closed):
    cases = [
        (Fraction(0), Fraction(1)),
        (Fraction(1, 7), Fraction(2, 7)),
        (Fraction(3, 8), Fraction(5, 8)),
        (Fraction(9, 10), Fraction(1)),
        (Fraction(1, 100), Fraction(1, 50)),
        (Fraction(7, 9), Fraction(8, 9)),
    ]
    for lo, hi in cases:
        assert min_index_in(lo, hi, closed=closed) == rescan_min_index(lo, hi, closed)


@given(
    num=st.integers(min_value=0, max_value=200),
    den=st.integers(min_value=1, max_value=200),
    width_den=st.integers(min_value=2, max_value=500),
    closed=st.booleans(),
)
@settings(max_examples=60, deadline=None)
def test_min_index_member_and_minimal(num, den, width_den, closed):
    lo = Fraction(min(num, den), max(num, den, 1))
    if lo == 1:
        lo = Fraction(99, 100)
    hi = min(Fraction(1), lo + Fraction(1, width_den))
    if lo >= hi:
        return
    n = min_index_in(lo, hi, closed=closed)
    q = rational_at(n)
    assert (lo <= q <= hi) if closed else (lo < q < hi)
    for m in range(n):
        earlier = rational_at(m)
        inside = (lo <= earlier <= hi) if closed else (lo < earlier < hi)
        assert not inside


def test_deep_interval_near_one():
    # Interval of width 3**-12 hugging 1; exercises the large-denominator path.
    lo = Fraction(3**12 - 2, 3**12)
    hi = Fraction(3**12 - 1, 3**12)
    n = min_index_in(lo, hi)
    q = rational_at(n)
    assert lo < q < hi
    assert q == Fraction(265720, 265721)


def test_count_up_to():
    assert count_up_to(1) == 2
    assert count_up_to(2) == 3
    assert count_up_to(4) == 7
    assert count_up_to(40) == len(brute_enumeration(40))


def test_fractions_up_to_sorted_with_indices():
    items = fractions_up_to(12)
    values = [q for q, _ in items]
    assert values == sorted(values)
    assert len(values) == len(set(values))
    for q, idx in items:
        assert rational_at(idx) == q


def test_min_entry_in_pairs_index_with_value():
    idx, q = min_entry_in(Fraction(1, 10), Fraction(1, 5))
    assert (idx, q) == (11, Fraction(1, 6))
    idx, q = min_entry_in(Fraction(9, 10), Fraction(1), closed=True)
    assert (idx, q) == (1, Fraction(1))
    # the huge-index case: value comes back without walking the enumeration
    idx, q = min_entry_in(Fraction(265719, 265720), Fraction(265721, 265722))
    assert q == Fraction(265720, 265721)
    assert rational_index(q) == idx


def test_parse_and_format():
    assert parse_rational("2/3") == Fraction(2, 3)
    assert parse_rational("4/6") == Fraction(2, 3)
    assert parse_rational("1") == Fraction(1)
    assert parse_rational(" 0 ") == Fraction(0)
    assert format_rational(Fraction(2, 3)) == "2/3"
    assert format_rational(Fraction(0)) == "0"
    assert format_rational(Fraction(4, 2)) == "2"
    for bad in ["", "a", "1/2/3", "-1/2", "0.5", "1/0"]:
        with pytest.raises(ValueError):
            parse_rational(bad)
