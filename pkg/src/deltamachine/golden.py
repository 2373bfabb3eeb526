"""Frozen reference transmission tables for small clusters (K = 2..7).

These grids are the regression baseline for the exact closed forms: rows are
tranche sizes k = 1..K, columns are states K+ = 0..K (increasing energy
label).  ``tables --K <n> --golden`` and the test suite compare freshly
computed tables against them cell by cell; any mismatch is a hard failure.
"""

from __future__ import annotations

from fractions import Fraction

_RAW: dict[int, tuple[tuple[str, ...], ...]] = {
    2: (
        ("0", "1/2", "1"),
        ("0", "1/2", "1"),
    ),
    3: (
        ("0", "1/3", "2/3", "1"),
        ("0", "1/3", "2/3", "1"),
        ("0", "0", "1", "1"),
    ),
    4: (
        ("0", "1/4", "1/2", "3/4", "1"),
        ("0", "1/4", "1/2", "3/4", "1"),
        ("0", "0", "1/2", "1", "1"),
        ("0", "0", "1/2", "1", "1"),
    ),
    5: (
        ("0", "1/5", "2/5", "3/5", "4/5", "1"),
        ("0", "1/5", "2/5", "3/5", "4/5", "1"),
        ("0", "0", "3/10", "7/10", "1", "1"),
        ("0", "0", "3/10", "7/10", "1", "1"),
        ("0", "0", "0", "1", "1", "1"),
    ),
    6: (
        ("0", "1/6", "1/3", "1/2", "2/3", "5/6", "1"),
        ("0", "1/6", "1/3", "1/2", "2/3", "5/6", "1"),
        ("0", "0", "1/5", "1/2", "4/5", "1", "1"),
        ("0", "0", "1/5", "1/2", "4/5", "1", "1"),
        ("0", "0", "0", "1/2", "1", "1", "1"),
        ("0", "0", "0", "1/2", "1", "1", "1"),
    ),
    7: (
        ("0", "1/7", "2/7", "3/7", "4/7", "5/7", "6/7", "1"),
        ("0", "1/7", "2/7", "3/7", "4/7", "5/7", "6/7", "1"),
        ("0", "0", "1/7", "13/35", "22/35", "6/7", "1", "1"),
        ("0", "0", "1/7", "13/35", "22/35", "6/7", "1", "1"),
        ("0", "0", "0", "2/7", "5/7", "1", "1", "1"),
        ("0", "0", "0", "2/7", "5/7", "1", "1", "1"),
        ("0", "0", "0", "0", "1", "1", "1", "1"),
    ),
}

GOLDEN_SIZES = tuple(sorted(_RAW))


def golden_table(K: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reference grid for cluster size K; rows k = 1..K, columns K+ = 0..K."""
    if K not in _RAW:
        raise KeyError(f"no golden table for K={K}; available: {GOLDEN_SIZES}")
    return tuple(tuple(Fraction(cell) for cell in row) for row in _RAW[K])
