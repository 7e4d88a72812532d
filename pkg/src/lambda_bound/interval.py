"""Rational interval arithmetic with exact endpoints.

Endpoints are :class:`fractions.Fraction` values, so the four basic
operations are exact and trivially enclose the true image.  To keep
denominators from growing without bound along long expression chains an
interval may carry a ``bits`` cap: results are then rounded *outward* to
dyadic rationals with ``bits`` fractional bits, which preserves containment.

Square roots are enclosed by bracketing ``floor(sqrt(q * 4**k))`` with
integer Newton iteration (``math.isqrt``) and widening the upper end by one
grid step when ``q`` is not a perfect dyadic square.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

from .errors import DivisionByIntervalContainingZero, NegativeRadicand

Number = Union[int, Fraction]


class Certainty(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    INDETERMINATE = "Indeterminate"

    def __bool__(self):  # guard against `if certified_less(...)` bugs
        raise TypeError("Certainty has no truth value; compare against Certainty.TRUE")


def _floor_dyadic(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction((q.numerator * scale) // q.denominator, scale)


def _ceil_dyadic(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(-((-q.numerator * scale) // q.denominator), scale)


def _merge_bits(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class RationalInterval:
    """Closed interval ``[lo, hi]`` with rational endpoints."""

    __slots__ = ("lo", "hi", "bits")

    def __init__(self, lo: Number, hi: Optional[Number] = None, bits: Optional[int] = None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval: lo={lo} > hi={hi}")
        if bits is not None:
            lo = _floor_dyadic(lo, bits)
            hi = _ceil_dyadic(hi, bits)
        self.lo = lo
        self.hi = hi
        self.bits = bits

    @classmethod
    def point(cls, q: Number, bits: Optional[int] = None) -> "RationalInterval":
        return cls(q, q, bits)

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other) -> "RationalInterval":
        if isinstance(other, RationalInterval):
            return other
        if isinstance(other, (int, Rational)):
            return RationalInterval(Fraction(other))
        if isinstance(other, float):
            # floats are exact binary rationals; accepting them is lossless
            return RationalInterval(Fraction(other))
        return NotImplemented

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, RationalInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= Fraction(x) <= self.hi

    __contains__ = contains

    def round_out(self, bits: int) -> "RationalInterval":
        return RationalInterval(self.lo, self.hi, bits)

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"RationalInterval({float(self.lo)!r}, {float(self.hi)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalInterval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalInterval(self.lo + o.lo, self.hi + o.hi, _merge_bits(self.bits, o.bits))

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo, self.bits)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalInterval(self.lo - o.hi, self.hi - o.lo, _merge_bits(self.bits, o.bits))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(p), max(p), _merge_bits(self.bits, o.bits))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalInterval":
        if self.lo <= 0 <= self.hi:
            raise DivisionByIntervalContainingZero(f"divisor {self!r} contains zero")
        return RationalInterval(1 / self.hi, 1 / self.lo, self.bits)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.lo <= 0 <= o.hi:
            raise DivisionByIntervalContainingZero(f"divisor {o!r} contains zero")
        p = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return RationalInterval(min(p), max(p), _merge_bits(self.bits, o.bits))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if k == 0:
            return RationalInterval(1, 1, self.bits)
        if k % 2 == 1 or self.lo >= 0:
            return RationalInterval(self.lo**k, self.hi**k, self.bits)
        if self.hi <= 0:
            return RationalInterval(self.hi**k, self.lo**k, self.bits)
        return RationalInterval(0, max(self.lo**k, self.hi**k), self.bits)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RationalInterval(0, max(-self.lo, self.hi), self.bits)

    def sqrt(self, precision_bits: Optional[int] = None) -> "RationalInterval":
        bits = precision_bits if precision_bits is not None else (self.bits or 128)
        if self.lo < 0:
            raise NegativeRadicand(f"square root of {self!r}")
        lo_enc = sqrt_enclosure(self.lo, bits)
        hi_enc = lo_enc if self.hi == self.lo else sqrt_enclosure(self.hi, bits)
        return RationalInterval(lo_enc.lo, hi_enc.hi, self.bits)


def interval_arith(x: RationalInterval, y: RationalInterval, op: str) -> RationalInterval:
    """Apply ``op`` (one of ``+ - * /``, also accepting ``×`` and ``÷``)."""
    if op in ("+",):
        return x + y
    if op in ("-", "−"):
        return x - y
    if op in ("*", "×"):
        return x * y
    if op in ("/", "÷"):
        return x / y
    raise ValueError(f"unknown operator {op!r}")


def sqrt_enclosure(q: Number, precision_bits: int) -> RationalInterval:
    """Enclose ``sqrt(q)`` in ``[lo, hi]`` with dyadic endpoints.

    ``lo**2 <= q <= hi**2`` and ``hi - lo <= 2**-precision_bits``.  The
    enclosures are nested as ``precision_bits`` grows.
    """
    if precision_bits < 1:
        raise ValueError("precision_bits must be positive")
    q = Fraction(q)
    if q < 0:
        raise NegativeRadicand(f"square root of negative rational {q}")
    k = precision_bits
    scaled = q.numerator * (1 << (2 * k))
    m = math.isqrt(scaled // q.denominator)
    lo = Fraction(m, 1 << k)
    hi = lo if lo * lo == q else Fraction(m + 1, 1 << k)
    return RationalInterval(lo, hi)


def certified_less(x: RationalInterval, y: RationalInterval) -> Certainty:
    x = x if isinstance(x, RationalInterval) else RationalInterval(Fraction(x))
    y = y if isinstance(y, RationalInterval) else RationalInterval(Fraction(y))
    if x.hi < y.lo:
        return Certainty.TRUE
    if y.hi < x.lo:
        return Certainty.FALSE
    return Certainty.INDETERMINATE


def interval_min(*xs: RationalInterval) -> RationalInterval:
    """Enclosure of the pointwise minimum of the enclosed reals."""
    bits = None
    for x in xs:
        bits = _merge_bits(bits, x.bits)
    return RationalInterval(min(x.lo for x in xs), min(x.hi for x in xs), bits)
