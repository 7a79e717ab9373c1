"""Shared test utilities: independent reference implementations."""

from __future__ import annotations

from fractions import Fraction

from cantorgame.rationals import RatEnumeration

_TABLES: dict[tuple[Fraction, Fraction, int], list[Fraction]] = {}


def enumeration_table(enum: RatEnumeration, count: int) -> list[Fraction]:
    """The first ``count`` enumeration values, computed once per range."""
    key = (enum.lo, enum.hi, count)
    if key not in _TABLES:
        _TABLES[key] = [enum.at(k) for k in range(count)]
    return _TABLES[key]


def first_in_scan(
    enum: RatEnumeration, x: Fraction, y: Fraction, cap: int = 50_000
) -> tuple[Fraction, int]:
    """Literal index-by-index scan; the oracle for ``first_in``."""
    for k, v in enumerate(enumeration_table(enum, cap + 1)):
        if x < v < y:
            return v, k
    raise AssertionError(f"no element found below index {cap}")


def level_intervals(tree, depth: int):
    """All (path, interval) pairs at exactly ``depth``."""
    out = []
    for idx in range(1 << depth):
        path = format(idx, f"0{depth}b") if depth else ""
        out.append((path, tree.interval(path)))
    return out


def interval_disjoint(p, q) -> bool:
    return p[1] < q[0] or q[1] < p[0]


def assert_strictly_increasing(values):
    for a, b in zip(values, values[1:]):
        assert a < b, f"not strictly increasing: {a} !< {b}"
