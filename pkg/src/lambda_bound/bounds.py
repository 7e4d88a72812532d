"""The bound family F(a, n, genus) and its optimisation over a and n.

All values are carried as multiples of 8*pi (``*_over_8pi``) so that exact
comparisons never involve pi; absolute values are produced on request.

Every real-valued routine takes a ``field`` argument (see
:mod:`lambda_bound.fields`).  The default :data:`~lambda_bound.fields.FLOAT`
evaluates in doubles; an :class:`~lambda_bound.fields.IntervalField` returns
certified enclosures from the very same code.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, List, NamedTuple, Tuple

from .errors import DeltaNegative, ParameterOutOfRange
from .fields import FLOAT

EIGHT_PI = 8.0 * math.pi

# relative slack when a float `a` is checked against the endpoint, so that
# 60**-0.5 and 1/math.sqrt(60) are both accepted
_ENDPOINT_RTOL = 1e-12


class ALocation(str, enum.Enum):
    INTERIOR_MINIMUM = "InteriorMinimum"
    POSITIVE_ENDPOINT = "PositiveEndpoint"
    NEGATIVE_ENDPOINT = "NegativeEndpoint"
    ZERO = "Zero"


def _check_genus(genus: int) -> int:
    if isinstance(genus, bool) or int(genus) != genus or genus < 0:
        raise ValueError(f"genus must be a non-negative integer, got {genus!r}")
    return int(genus)


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _check_beta(beta: int) -> int:
    if isinstance(beta, bool) or int(beta) != beta or beta < 0:
        raise ValueError(f"beta must be a non-negative integer, got {beta!r}")
    return int(beta)


def degree_bound(n: int, genus: int) -> int:
    """Degree ``ceil(n*genus/(n+1)) + n`` of a full holomorphic map to CP^n."""
    n = _check_n(n)
    genus = _check_genus(genus)
    return -(-n * genus // (n + 1)) + n


def endpoint(n: int, field=FLOAT):
    """Largest admissible ``|a|``, namely ``1/sqrt(2n(n+1))``."""
    n = _check_n(n)
    return field.num(1) / field.sqrt(field.num(2 * n * (n + 1)))


@dataclass(frozen=True)
class DerivedQuantities:
    n: int
    genus: int
    beta: int
    d: int
    delta: Fraction
    xi: Fraction
    endpoint: float

    @property
    def discriminant(self) -> Fraction:
        """``xi**2 - 2(n**2 - 1) delta``, exact."""
        return self.xi**2 - 2 * (self.n**2 - 1) * self.delta


def derived_quantities(n: int, genus: int, beta: int = 0) -> DerivedQuantities:
    n = _check_n(n)
    genus = _check_genus(genus)
    beta = _check_beta(beta)
    d = degree_bound(n, genus)
    delta = 1 + (Fraction(genus - 1) - Fraction(beta, 2)) / d
    if delta < 0:
        raise DeltaNegative(
            f"delta = {delta} < 0 for n={n}, genus={genus}, beta={beta}; "
            "the total ramification is too large for the bound to apply"
        )
    xi = n * delta + (n - 1)
    return DerivedQuantities(n, genus, beta, d, delta, xi, 1.0 / math.sqrt(2 * n * (n + 1)))


def _as_field(a, field):
    if field is FLOAT:
        return float(a)
    return field.num(Fraction(a) if isinstance(a, (int, float)) else a)


def _check_a(a, n: int, field):
    e = endpoint(n, field)
    if field is FLOAT:
        if abs(a) > e * (1 + _ENDPOINT_RTOL):
            raise ParameterOutOfRange(f"|a| = {abs(a)!r} exceeds 1/sqrt(2n(n+1)) = {e!r} for n={n}")
    else:
        # reject only when the violation is certain
        if abs(a).lo > e.hi:
            raise ParameterOutOfRange(f"|a| = {float(abs(a))!r} exceeds 1/sqrt(2n(n+1)) for n={n}")


def _family_over_8pi(a, n: int, d: int, delta: Fraction, field):
    c = field.num(Fraction(n - 1, n + 1))
    dlt = field.num(delta)
    num = 2 * a * a * dlt - c
    den = (2 * a - 1) ** 2 + c
    if field is FLOAT and den == 0.0:
        # only n=1, a=1/2: the bound degenerates to +inf (constant d when delta=0)
        return math.inf if num > 0 else float(d)
    return d * (1 + num / den)


def general_bound_over_8pi(a, n: int, genus: int, beta: int = 0, field=FLOAT):
    """F(a, n, genus)/(8 pi) for a map of degree ``degree_bound(n, genus)``."""
    dq = derived_quantities(n, genus, beta)
    a = _as_field(a, field)
    _check_a(a, dq.n, field)
    return _family_over_8pi(a, dq.n, dq.d, dq.delta, field)


def general_bound(a: float, n: int, genus: int, beta: int = 0) -> float:
    """Absolute bound on the normalised first eigenvalue (float backend)."""
    return EIGHT_PI * general_bound_over_8pi(a, n, genus, beta)


class CriticalPoints(NamedTuple):
    a_min: Any
    a_max: Any


def critical_points(n: int, genus: int, beta: int = 0, field=FLOAT) -> CriticalPoints:
    """Local minimum and maximum of ``a -> F(a, n, genus)`` on the real line.

    ``a_min`` is evaluated in the cancellation-free form ``(n-1)/(xi + sqrt(D))``
    which equals ``(xi - sqrt(D))/(2 delta (n+1))`` because the product of the
    two roots is ``(n**2-1)/(2 delta (n+1)**2)``.
    """
    dq = derived_quantities(n, genus, beta)
    if dq.delta == 0:
        raise DeltaNegative(f"critical points need delta > 0 (n={n}, genus={genus}, beta={beta})")
    root = field.sqrt(field.num(dq.discriminant))
    xi = field.num(dq.xi)
    a_min = field.num(n - 1) / (xi + root)
    a_max = (xi + root) / field.num(2 * dq.delta * (n + 1))
    return CriticalPoints(a_min, a_max)


class NBound(NamedTuple):
    n: int
    a: Any
    over_8pi: Any
    location: ALocation

    @property
    def value(self) -> float:
        return EIGHT_PI * float(self.over_8pi)


def _candidates(n: int, genus: int, beta: int, field) -> List[Tuple[Any, ALocation]]:
    dq = derived_quantities(n, genus, beta)
    e = endpoint(n, field)
    cands = [(field.num(0), ALocation.ZERO)]
    # for n=1 the interior critical point is a=0 itself
    if n >= 2 and dq.delta > 0:
        a_min = critical_points(n, genus, beta, field).a_min
        if not field.less(e, abs(a_min)):
            cands.append((a_min, ALocation.INTERIOR_MINIMUM))
    # for n=1 the positive endpoint a=1/2 makes the denominator vanish
    if n >= 2:
        cands.append((e, ALocation.POSITIVE_ENDPOINT))
    cands.append((-e, ALocation.NEGATIVE_ENDPOINT))
    return cands


def optimal_bound_for_n(n: int, genus: int, field=FLOAT, beta: int = 0) -> NBound:
    """Minimise F(., n, genus) over the admissible interval of ``a``.

    The minimum over ``[-e, e]`` is attained at the interior critical point
    when it is admissible, otherwise at an endpoint (or at 0 for n=1), so
    evaluating that finite candidate set is exact.
    """
    n = _check_n(n)
    genus = _check_genus(genus)
    dq = derived_quantities(n, genus, beta)
    cands = _candidates(n, genus, dq.beta, field)
    values = [_family_over_8pi(a, n, dq.d, dq.delta, field) for a, _ in cands]
    i = field.argmin(values)
    return NBound(n, cands[i][0], values[i], cands[i][1])


@dataclass
class BoundReport:
    genus: int
    chosen_n: int
    chosen_a: Any
    bound_over_8pi: Any
    a_location: ALocation
    per_n: List[NBound] = dc_field(default_factory=list)

    @property
    def bound(self) -> float:
        return EIGHT_PI * float(self.bound_over_8pi)

    @property
    def per_n_values(self) -> List[Tuple[int, float]]:
        return [(b.n, b.value) for b in self.per_n]


def best_bound(genus: int, n_max: int = 5, field=FLOAT, beta: int = 0) -> BoundReport:
    """Best member of the family over ``n in [1, n_max]``; ties go to the smallest n."""
    genus = _check_genus(genus)
    n_max = _check_n(n_max)
    per_n = [optimal_bound_for_n(n, genus, field, beta) for n in range(1, n_max + 1)]
    best = per_n[field.argmin([b.over_8pi for b in per_n])]
    return BoundReport(genus, best.n, best.a, best.over_8pi, best.location, per_n)


def yang_yau_over_8pi(genus: int) -> int:
    return (_check_genus(genus) + 3) // 2


def yang_yau(genus: int) -> float:
    """Classical bound ``8 pi floor((genus+3)/2)``, the n=1 member of the family."""
    return EIGHT_PI * yang_yau_over_8pi(genus)


def closed_form_f5_over_8pi(genus: int, field=FLOAT):
    genus = _check_genus(genus)
    s15 = field.sqrt(field.num(15))
    ceil_term = -(-5 * genus // 6)
    total = field.num(genus) + (33 - 4 * s15) * ceil_term + 4 * (41 - 5 * s15)
    return total / (4 * (13 - s15))


def closed_form_f5(genus: int) -> float:
    """Closed form of the n=5 member evaluated at the positive endpoint."""
    return EIGHT_PI * closed_form_f5_over_8pi(genus)


def linear_envelope(field=FLOAT) -> Tuple[Any, Any]:
    """``(slope, intercept)`` with ``F5(genus)/(8 pi) <= slope*genus + intercept``."""
    s15 = field.sqrt(field.num(15))
    den = 4 * s15 - 52
    slope = field.num(89) / (6 * den) + field.num(Fraction(5, 6))
    intercept = field.num(115) / den + 6
    return slope, intercept


def asymptotic_constant(field=FLOAT):
    """Limit of ``F5(genus)/(8 pi genus)`` as the genus grows."""
    s15 = field.sqrt(field.num(15))
    return field.num(Fraction(5, 6)) - field.num(89) / (6 * (52 - 4 * s15))
