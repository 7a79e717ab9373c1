"""Exact rational arithmetic helpers and the fixed rational enumeration.

Every number in the engine is a ``fractions.Fraction`` (arbitrary
precision, stored normalized with a positive denominator); ``Rat`` is
the alias used throughout.  The wire format for a rational is the
string ``"num/den"`` in lowest terms with an optional leading minus
sign.  The parser rejects anything else, so parse/format round-trips
are the identity and comparisons of wire values are exact.

``RatEnumeration`` is the fixed, platform-independent enumeration of
the rationals in a closed interval [lo, hi]: index 0 is lo, index 1 is
hi, and from index 2 on come the Stern-Brocot tree levels of (0, 1) in
breadth-first, left-to-right order

    1/2;  1/3, 2/3;  1/4, 2/5, 3/5, 3/4;  ...

mapped affinely onto [lo, hi].  Each interior rational appears exactly
once (the Stern-Brocot tree enumerates reduced fractions), so the
scheme is injective and its range is exactly Q cap [lo, hi].

``first_in(x, y)`` returns the least-index element strictly inside the
open interval (x, y).  Index order is (level, position within level),
and the lowest common ancestor of two same-level tree nodes lies
numerically between them, so the element of least index in any open
interval is the unique one of minimal level; the standard Stern-Brocot
descent finds it.  Consecutive descent steps in one direction are
batched with exact integer division, so intervals with huge-denominator
endpoints (which the extraction pipeline produces) cost a number of big
integer operations proportional to the endpoints' continued-fraction
length rather than to the resulting index.  The test suite keeps a
literal index-by-index scan as the independent reference.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from fractions import Fraction

# Deep extractions produce enumeration indices with tens of thousands of
# digits; lift CPython's int<->str conversion guard so exact values
# always serialize.
sys.set_int_max_str_digits(2_000_000)

Rat = Fraction

_WIRE_RE = re.compile(r"-?(?:0|[1-9][0-9]*)/[1-9][0-9]*")


class RatParseError(ValueError):
    """Input is not a normalized ``num/den`` rational string."""


class EmptyIntervalError(ValueError):
    """Open interval (x, y) with x >= y has no interior points."""


class CapExceededError(RuntimeError):
    """The requested element exists but its index exceeds the given cap.

    This signals a mis-set cap, never a mathematical absence: every
    nonempty open subinterval of [lo, hi] contains enumeration elements.
    """

    def __init__(self, cap: int, index: int, value: Rat):
        super().__init__(
            f"least-index element is {format_rat(value)} at index {index}, "
            f"beyond the cap {cap}"
        )
        self.cap = cap
        self.index = index
        self.value = value


class EnumerationLevelError(RuntimeError):
    """The least-index element sits at an unrepresentably deep tree level.

    Indices grow like 2^level, so a level in the billions (an interval
    hugging a very simple fraction to astronomically many digits) has no
    materializable index even though the element's value is computable.
    """

    def __init__(self, level: int, value: Rat):
        super().__init__(
            f"descent passed tree level {level} near {format_rat(value)}; "
            f"the least index there (about 2^{level}) is not representable"
        )
        self.level = level
        self.value = value


def parse_rat(text: str) -> Rat:
    """Parse a ``num/den`` wire string, rejecting non-normalized input."""
    if not isinstance(text, str) or not _WIRE_RE.fullmatch(text):
        raise RatParseError(f"not a num/den rational string: {text!r}")
    num_s, den_s = text.split("/")
    value = Fraction(int(num_s), int(den_s))
    if format_rat(value) != text:
        raise RatParseError(f"not in lowest terms: {text!r}")
    return value


def format_rat(x: Rat) -> str:
    """Wire form of a rational: always ``num/den``, e.g. ``2/1``, ``-3/7``."""
    return f"{x.numerator}/{x.denominator}"


def rat_cmp(x: Rat, y: Rat) -> int:
    """Exact three-way comparison: -1 (less), 0 (equal), +1 (greater)."""
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


def _unit_at(k: int) -> Rat:
    """The k-th element of the scheme on [0, 1]."""
    if k < 0:
        raise ValueError("enumeration index must be >= 0")
    if k == 0:
        return Fraction(0)
    if k == 1:
        return Fraction(1)
    # Heap numbering: node k-1 in a complete binary tree rooted at 1/2;
    # the binary digits of k-1 below the leading 1 are the descent path.
    path = bin(k - 1)[3:]
    ln, ld, rn, rd = 0, 1, 1, 1
    mn, md = 1, 2
    for b in path:
        if b == "0":
            rn, rd = mn, md
        else:
            ln, ld = mn, md
        mn, md = ln + rn, ld + rd
    return Fraction(mn, md)


# Indices grow like 2^level; this bounds the materialized index to a
# few hundred kilobytes while staying far above anything the engine's
# constructions reach (deep extractions land in the tens of thousands).
_LEVEL_LIMIT = 4_000_000


def _least_index_in_unit(x: Rat, y: Rat) -> tuple[Rat, int]:
    """Least-index scheme element strictly inside (x, y), 0 <= x < y <= 1.

    Stern-Brocot descent with run-length batching.  Invariant: the
    current bounds satisfy L <= x < y <= R, so the mediant search always
    terminates at the unique minimal-level node inside (x, y).
    """
    xn, xd = x.numerator, x.denominator
    yn, yd = y.numerator, y.denominator
    ln, ld, rn, rd = 0, 1, 1, 1
    depth = 0
    pos = 0
    while True:
        mn, md = ln + rn, ld + rd
        if mn * xd <= xn * md:
            # Mediant <= x: batch right steps.  Largest t with
            # (ln + t*rn)/(ld + t*rd) <= x; the denominator is positive
            # because R >= y > x.
            t = (xn * ld - xd * ln) // (xd * rn - xn * rd)
            ln, ld = ln + t * rn, ld + t * rd
            if depth + t > _LEVEL_LIMIT:
                raise EnumerationLevelError(depth + t, Fraction(ln + rn, ld + rd))
            pos = (pos << t) | ((1 << t) - 1)
            depth += t
        elif mn * yd >= yn * md:
            # Mediant >= y: batch left steps (L <= x < y keeps the
            # divisor positive).
            t = (yd * rn - yn * rd) // (yn * ld - yd * ln)
            rn, rd = rn + t * ln, rd + t * ld
            if depth + t > _LEVEL_LIMIT:
                raise EnumerationLevelError(depth + t, Fraction(ln + rn, ld + rd))
            pos <<= t
            depth += t
        else:
            return Fraction(mn, md), (1 << depth) + 1 + pos


@dataclass(frozen=True)
class RatEnumeration:
    """The fixed enumeration of the rationals in [lo, hi] (lo < hi rational)."""

    lo: Rat
    hi: Rat

    SCHEME = "stern-brocot"

    def __post_init__(self) -> None:
        if self.lo >= self.hi:
            raise ValueError("enumeration range requires lo < hi")

    @property
    def descriptor(self) -> str:
        return f"{self.SCHEME}[{format_rat(self.lo)},{format_rat(self.hi)}]"

    def at(self, k: int) -> Rat:
        """The k-th rational of the scheme, mapped onto [lo, hi]."""
        q = _unit_at(k)
        return self.lo + q * (self.hi - self.lo)

    def first_in(
        self, x: Rat, y: Rat, index_cap: int | None = None
    ) -> tuple[Rat, int]:
        """Least-index element v with x < v < y (strict), plus its index.

        Requires lo <= x and y <= hi.  Raises EmptyIntervalError when
        x >= y and CapExceededError when the element's index is beyond
        ``index_cap`` (pass None for no cap; the element always exists).
        """
        if x >= y:
            raise EmptyIntervalError(
                f"empty open interval ({format_rat(x)}, {format_rat(y)})"
            )
        if x < self.lo or y > self.hi:
            raise ValueError("query interval extends beyond the enumeration range")
        span = self.hi - self.lo
        unit_v, index = _least_index_in_unit((x - self.lo) / span, (y - self.lo) / span)
        value = self.lo + unit_v * span
        if index_cap is not None and index > index_cap:
            raise CapExceededError(index_cap, index, value)
        return value, index


def unit_enumeration() -> RatEnumeration:
    """The enumeration of Q cap [0, 1]."""
    return RatEnumeration(Fraction(0), Fraction(1))
