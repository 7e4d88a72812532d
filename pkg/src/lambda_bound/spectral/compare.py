from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..bounds import EIGHT_PI, best_bound
from .result import SpectrumResult

DISCRETE_SLACK = 0.02
# absorbs floating-point round-off only; equality cases (round sphere vs 8 pi) must pass
_ROUNDOFF_RTOL = 1e-12


@dataclass
class BoundComparison:
    genus: int
    normalized: float
    bound: float
    bound_over_8pi: float
    chosen_n: int
    margin: float
    slack: float
    passed: bool


def check_against_bound(
    spectrum: SpectrumResult, genus: int, slack: Optional[float] = None, n_max: int = 5
) -> BoundComparison:
    """Compare ``lambda_1 * Area`` with the best bound for ``genus``.

    ``slack`` defaults to 2% for discrete spectra and 0 for analytic ones;
    cotangent eigenvalues are not one-sided approximations, so a discrete value
    can overshoot a sharp bound slightly.
    """
    if slack is None:
        slack = 0.0 if spectrum.method.analytic else DISCRETE_SLACK
    if slack < 0:
        raise ValueError("slack must be non-negative")
    report = best_bound(genus, n_max)
    bound = EIGHT_PI * report.bound_over_8pi
    passed = spectrum.normalized <= bound * (1.0 + slack + _ROUNDOFF_RTOL)
    return BoundComparison(
        genus=genus,
        normalized=spectrum.normalized,
        bound=bound,
        bound_over_8pi=report.bound_over_8pi,
        chosen_n=report.chosen_n,
        margin=bound - spectrum.normalized,
        slack=slack,
        passed=bool(passed),
    )
