import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lambda_bound.errors import DivisionByIntervalContainingZero, NegativeRadicand
from lambda_bound.fields import IntervalField, refine
from lambda_bound.interval import (
    Certainty,
    RationalInterval,
    certified_less,
    interval_arith,
    interval_min,
    sqrt_enclosure,
)

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**9)


def test_sqrt_enclosure_contains_float_sqrt():
    rng = random.Random(20261016)
    for _ in range(10_000):
        q = Fraction(rng.randrange(0, 10**12), rng.randrange(1, 10**6))
        enc = sqrt_enclosure(q, 53)
        s = math.sqrt(q)
        ulp = math.ulp(s)
        assert Fraction(enc.lo) - Fraction(ulp) <= Fraction(s) <= Fraction(enc.hi) + Fraction(ulp)


def test_sqrt_enclosure_brackets_exact_square():
    enc = sqrt_enclosure(Fraction(49, 4), 40)
    assert Fraction(7, 2) in enc


@given(st.fractions(min_value=0, max_value=10**6, max_denominator=10**6), st.integers(8, 200))
@settings(max_examples=200, deadline=None)
def test_sqrt_refinement_is_nested(q, bits):
    coarse = sqrt_enclosure(q, bits)
    fine = sqrt_enclosure(q, bits + 17)
    assert coarse.lo <= fine.lo <= fine.hi <= coarse.hi


@given(rationals, rationals)
def test_rational_ops_are_exact(x, y):
    assert (RationalInterval(x) + y) - y == RationalInterval(x)
    assert x + y - y == x


@given(rationals, rationals, rationals, rationals, st.sampled_from("+-*/"))
@settings(max_examples=300)
def test_arith_contains_image_of_endpoints(a, b, c, d, op):
    x = RationalInterval(min(a, b), max(a, b))
    y = RationalInterval(min(c, d), max(c, d))
    if op == "/" and 0 in y:
        with pytest.raises(DivisionByIntervalContainingZero):
            interval_arith(x, y, op)
        return
    z = interval_arith(x, y, op)
    assert z.lo <= z.hi
    f = {"+": lambda p, q: p + q, "-": lambda p, q: p - q, "*": lambda p, q: p * q, "/": lambda p, q: p / q}[op]
    for p in (x.lo, x.hi, x.mid):
        for q in (y.lo, y.hi, y.mid):
            assert f(p, q) in z


@given(rationals, rationals, st.integers(4, 64))
def test_bit_cap_rounds_outward(a, b, bits):
    x = RationalInterval(min(a, b), max(a, b), bits=bits)
    assert x.lo <= min(a, b) and x.hi >= max(a, b)
    assert (x.lo * 2**bits).denominator == 1 and (x.hi * 2**bits).denominator == 1


def test_product_of_unit_intervals():
    assert RationalInterval(1, 2) * RationalInterval(3, 4) == RationalInterval(3, 8)


def test_division_by_interval_containing_zero():
    with pytest.raises(DivisionByIntervalContainingZero):
        RationalInterval(1) / RationalInterval(-1, 1)


def test_negative_radicand():
    with pytest.raises(NegativeRadicand):
        RationalInterval(-2, -1).sqrt(64)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ((1, 2), (3, 4), Certainty.TRUE),
        ((1, 3), (2, 4), Certainty.INDETERMINATE),
        ((3, 4), (1, 2), Certainty.FALSE),
        ((1, 2), (2, 3), Certainty.INDETERMINATE),
    ],
)
def test_certified_less(x, y, expected):
    assert certified_less(RationalInterval(*x), RationalInterval(*y)) is expected


def test_certainty_refuses_truthiness():
    with pytest.raises(TypeError):
        bool(Certainty.TRUE)


def test_sqrt15_below_four():
    assert certified_less(sqrt_enclosure(15, 64), RationalInterval(4)) is Certainty.TRUE


def test_ros_value_brackets_21_668_pi_and_beats_24_pi():
    # 16(4 - sqrt 7) in units of pi
    enc = 16 * (4 - sqrt_enclosure(7, 96))
    assert enc.width < Fraction(1, 10**20)
    assert abs(float(enc.mid) - 21.668) < 5e-4
    assert certified_less(enc, RationalInterval(24)) is Certainty.TRUE


def test_interval_min_is_pointwise():
    m = interval_min(RationalInterval(1, 5), RationalInterval(2, 3))
    assert m == RationalInterval(1, 3)


def test_interval_field_argmin_by_elimination():
    f = IntervalField(64)
    assert f.argmin([RationalInterval(7), RationalInterval(7, 8), RationalInterval(6, Fraction(13, 2))]) == 2


def test_refine_doubles_until_decided():
    from lambda_bound.errors import Undecided

    seen = []

    def fn(field):
        seen.append(field.bits)
        # sqrt(2) vs 1.41421356237309504880168872420969807 needs more than 64 bits
        close = Fraction(141421356237309504880168872420969807, 10**35)
        return field.less(field.num(close), field.sqrt(field.num(2)))

    assert refine(fn, 32, 1024) == (True, 128)
    assert seen[0] == 32 and all(b == 2 * a for a, b in zip(seen, seen[1:]))
    assert len(seen) > 1
    with pytest.raises(Undecided):
        refine(fn, 8, 64)
