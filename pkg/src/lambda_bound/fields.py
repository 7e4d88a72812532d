"""Numeric backends driving the bound formulas.

Every formula in :mod:`lambda_bound.bounds` is written once against a small
field interface: conversion of exact rationals (``num``), ``sqrt``, and a
strict comparison ``less``.  :data:`FLOAT` evaluates in IEEE doubles,
:class:`IntervalField` in outward-rounded rational intervals where ``less``
only answers when the enclosures are disjoint.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction

from .errors import Undecided
from .interval import Certainty, RationalInterval, certified_less, interval_min

DEFAULT_PRECISION_BITS = 128
MAX_PRECISION_BITS = 1024
PRECISION_ENV = "LAMBDA_BOUND_PRECISION_BITS"


def default_precision_bits() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if bits < 1:
        raise ValueError(f"{PRECISION_ENV} must be a positive integer, got {raw!r}")
    return bits


class FloatField:
    name = "float"
    exact = False

    def num(self, q):
        return float(q)

    def sqrt(self, x):
        return math.sqrt(x)

    def less(self, x, y) -> bool:
        return x < y

    def minimum(self, *xs):
        return min(xs)

    def argmin(self, xs) -> int:
        """Index of the smallest value; ties go to the earliest index."""
        best = 0
        for i in range(1, len(xs)):
            if xs[i] < xs[best]:
                best = i
        return best

    def to_float(self, x) -> float:
        return float(x)

    def __repr__(self):
        return "FloatField()"


class IntervalField:
    """Rational interval backend with ``bits`` fractional bits of working precision."""

    exact = True

    def __init__(self, bits: int = DEFAULT_PRECISION_BITS):
        if bits < 1:
            raise ValueError("bits must be positive")
        self.bits = bits
        self.name = f"interval[{bits}]"

    def num(self, q) -> RationalInterval:
        if isinstance(q, RationalInterval):
            return q
        return RationalInterval.point(Fraction(q), self.bits)

    def sqrt(self, x) -> RationalInterval:
        return self.num(x).sqrt(self.bits)

    def less(self, x, y) -> bool:
        c = certified_less(self.num(x), self.num(y))
        if c is Certainty.INDETERMINATE:
            raise Undecided(f"cannot order {x!r} and {y!r} at {self.bits} bits")
        return c is Certainty.TRUE

    def minimum(self, *xs):
        return interval_min(*(self.num(x) for x in xs))

    def argmin(self, xs) -> int:
        """Index of the certified strict minimum.

        Entries whose lower end exceeds some other upper end are eliminated;
        exactly one survivor is required.  A tie among non-minimal entries
        therefore never blocks the decision.  Survivors that are all the same
        exact point are a proven tie and resolve to the earliest.
        """
        xs = [self.num(x) for x in xs]
        ceiling = min(x.hi for x in xs)
        survivors = [i for i, x in enumerate(xs) if x.lo <= ceiling]
        first = xs[survivors[0]]
        if len(survivors) > 1 and first.width == 0 and all(xs[i] == first for i in survivors):
            return survivors[0]
        if len(survivors) != 1:
            raise Undecided(f"cannot separate the minimum among {len(survivors)} entries at {self.bits} bits")
        return survivors[0]

    def to_float(self, x) -> float:
        return float(x)

    def __repr__(self):
        return f"IntervalField(bits={self.bits})"


FLOAT = FloatField()


def refine(fn, start_bits: int | None = None, max_bits: int = MAX_PRECISION_BITS):
    """Call ``fn(IntervalField(bits))`` doubling ``bits`` on :class:`Undecided`.

    Returns ``(result, bits_used)``; re-raises the last :class:`Undecided` once
    ``max_bits`` is exhausted.
    """
    bits = start_bits or default_precision_bits()
    bits = min(bits, max_bits)
    while True:
        try:
            return fn(IntervalField(bits)), bits
        except Undecided:
            if bits >= max_bits:
                raise
            bits = min(2 * bits, max_bits)
