"""Exact rational arithmetic, closed rational intervals and certified logarithms.

Everything downstream is built on :class:`fractions.Fraction`, which already
keeps values in lowest terms with the sign on the numerator.  The helpers here
add the checks the rest of the package relies on (integer-only construction,
``0**0`` rejection) plus outward-rounded interval operations and rigorous
logarithm enclosures computed with directed fixed-point arithmetic.
"""

from __future__ import annotations

import enum
import numbers
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Rational = Fraction

__all__ = [
    "Rational",
    "RationalInterval",
    "Status",
    "ZeroDenominatorError",
    "interval_invert",
    "log_enclosure",
    "log_int_fixed",
    "parse_rational",
    "rat_cmp",
    "rat_make",
    "rat_mul",
    "rat_pow",
    "rat_str",
    "rat_sub",
]


class ZeroDenominatorError(ZeroDivisionError):
    """A rational was requested with denominator zero."""


class Status(str, enum.Enum):
    """Three-valued verdict of a certified comparison."""

    CERTIFIED = "certified"
    FALSIFIED = "falsified"
    INCONCLUSIVE = "inconclusive"

    def __str__(self) -> str:
        return self.value


def _require_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    return int(value)


def rat_make(num: int, den: int = 1) -> Fraction:
    """Build ``num/den`` in lowest terms with a positive denominator."""
    num = _require_int(num, "num")
    den = _require_int(den, "den")
    if den == 0:
        raise ZeroDenominatorError(f"zero denominator in {num}/0")
    return Fraction(num, den)


def rat_mul(x: Fraction, y: Fraction) -> Fraction:
    return Fraction(x) * Fraction(y)


def rat_sub(x: Fraction, y: Fraction) -> Fraction:
    return Fraction(x) - Fraction(y)


def rat_cmp(x: Fraction, y: Fraction) -> int:
    """Return -1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``."""
    x, y = Fraction(x), Fraction(y)
    return (x > y) - (x < y)


def rat_pow(x: Fraction, e: int) -> Fraction:
    e = _require_int(e, "e")
    if e < 0:
        raise ValueError("exponent must be non-negative")
    x = Fraction(x)
    if x == 0 and e == 0:
        raise ValueError("0**0 is undefined")
    return x**e


def rat_str(x: Fraction | int) -> str:
    """Serialize as the decimal string ``num/den`` (denominator always present)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"P/Q"`` or ``"P"``; decimals and floats are rejected."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational of the form P/Q: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return rat_make(num, den)


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval ``[lo, hi]`` with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x) -> RationalInterval:
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        if isinstance(x, RationalInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def intersects(self, other: RationalInterval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __neg__(self) -> RationalInterval:
        return RationalInterval(-self.hi, -self.lo)

    def __add__(self, other) -> RationalInterval:
        other = _as_interval(other)
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other) -> RationalInterval:
        other = _as_interval(other)
        return RationalInterval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other) -> RationalInterval:
        return _as_interval(other) - self

    def __mul__(self, other) -> RationalInterval:
        other = _as_interval(other)
        corners = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return RationalInterval(min(corners), max(corners))

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalInterval:
        other = _as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError(f"divisor interval contains zero: {other}")
        return self * interval_invert_signed(other)

    def round_outward(self, bits: int) -> RationalInterval:
        """Widen to the dyadic grid ``2**-bits`` (keeps endpoint sizes bounded)."""
        scale = 1 << bits
        lo = (self.lo.numerator * scale) // self.lo.denominator
        hi = -((-self.hi.numerator * scale) // self.hi.denominator)
        return RationalInterval(Fraction(lo, scale), Fraction(hi, scale))

    def as_strings(self) -> tuple[str, str]:
        return rat_str(self.lo), rat_str(self.hi)

    def __str__(self) -> str:
        return f"[{rat_str(self.lo)}, {rat_str(self.hi)}]"


def _as_interval(x) -> RationalInterval:
    if isinstance(x, RationalInterval):
        return x
    return RationalInterval.point(Fraction(x))


def interval_invert(iv: RationalInterval) -> RationalInterval:
    """Enclosure of ``1/x`` over a strictly positive interval."""
    if iv.lo <= 0:
        raise ValueError(f"interval must be strictly positive to invert: {iv}")
    return RationalInterval(1 / iv.hi, 1 / iv.lo)


def interval_invert_signed(iv: RationalInterval) -> RationalInterval:
    if iv.lo > 0:
        return interval_invert(iv)
    if iv.hi < 0:
        return -interval_invert(-iv)
    raise ZeroDivisionError(f"interval contains zero: {iv}")


# ---------------------------------------------------------------------------
# Certified logarithms
#
# ln y = e*ln 2 + 2*atanh(t),  t = (y - 2**e) / (y + 2**e),  |t| <= 1/5
#
# atanh is summed in fixed point at scale 2**F with two chains of powers, one
# rounded down and one rounded up, so lo <= true <= hi holds term by term.
# The omitted tail is bounded by the first omitted term over (1 - t**2).
# ---------------------------------------------------------------------------


def _atanh_fixed(a: int, b: int, prec: int) -> tuple[int, int]:
    """Bounds ``(lo, hi)`` with ``lo/2**prec <= atanh(a/b) <= hi/2**prec``; ``0 <= a < b``."""
    if a == 0:
        return 0, 0
    if not 0 < a < b:
        raise ValueError("atanh argument must lie in [0, 1)")
    a2, b2 = a * a, b * b
    pl = (a << prec) // b
    pu = -((-a << prec) // b)
    lo = hi = 0
    d = 1
    while pu > 4:
        lo += pl // d
        hi += -(-pu // d)
        pl = pl * a2 // b2
        pu = -((-pu * a2) // b2)
        d += 2
    hi += -((-pu * b2) // (d * (b2 - a2)))
    return lo, hi


@lru_cache(maxsize=64)
def _ln2_fixed(prec: int) -> tuple[int, int]:
    lo, hi = _atanh_fixed(1, 3, prec)
    return 2 * lo, 2 * hi


def _log_small_fixed(y: int, prec: int) -> tuple[int, int]:
    # y >= 1, bit length modest; reduce y/2**e into [3/4, 3/2)
    e = y.bit_length() - 1
    base = 1 << e
    l2lo, l2hi = _ln2_fixed(prec)
    if 2 * y < 3 * base:
        tlo, thi = _atanh_fixed(y - base, y + base, prec)
        return e * l2lo + 2 * tlo, e * l2hi + 2 * thi
    base <<= 1
    e += 1
    tlo, thi = _atanh_fixed(base - y, y + base, prec)
    return e * l2lo - 2 * thi, e * l2hi - 2 * tlo


def log_int_fixed(y: int, prec: int) -> tuple[int, int]:
    """Integers ``(lo, hi)`` with ``lo/2**prec <= ln(y) <= hi/2**prec`` for ``y >= 1``."""
    y = _require_int(y, "y")
    if y < 1:
        raise ValueError("logarithm argument must be a positive integer")
    if y == 1:
        return 0, 0
    keep = prec + 8
    shift = max(0, y.bit_length() - keep)
    guard = 8 + shift.bit_length()
    work = prec + guard
    if shift == 0:
        lo, hi = _log_small_fixed(y, work)
    else:
        # y lies in [h*2**s, (h+1)*2**s]; ln is increasing
        h = y >> shift
        l2lo, l2hi = _ln2_fixed(work)
        lo = _log_small_fixed(h, work)[0] + shift * l2lo
        top = h if (h << shift) == y else h + 1
        hi = _log_small_fixed(top, work)[1] + shift * l2hi
    return lo >> guard, -((-hi) >> guard)


def log_enclosure(x, bits: int = 64) -> RationalInterval:
    """Certified enclosure of ``ln x`` for a positive rational or a positive interval.

    The width is a small multiple of ``2**-bits``.
    """
    if isinstance(x, RationalInterval):
        if x.lo <= 0:
            raise ValueError(f"logarithm of non-positive interval {x}")
        return RationalInterval(log_enclosure(x.lo, bits).lo, log_enclosure(x.hi, bits).hi)
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"logarithm of non-positive value {x}")
    nlo, nhi = log_int_fixed(x.numerator, bits)
    dlo, dhi = log_int_fixed(x.denominator, bits)
    scale = 1 << bits
    return RationalInterval(Fraction(nlo - dhi, scale), Fraction(nhi - dlo, scale))
