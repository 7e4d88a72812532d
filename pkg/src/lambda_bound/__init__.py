"""Upper bounds for the normalised first Laplace eigenvalue of orientable surfaces.

The bound family, its optimisation over the deformation parameter and the
target dimension, certified interval checks of the comparison lemmas, and
spectral cross-checks on flat tori and triangle meshes.
"""
from .bounds import (
    EIGHT_PI,
    ALocation,
    BoundReport,
    CriticalPoints,
    DerivedQuantities,
    NBound,
    asymptotic_constant,
    best_bound,
    closed_form_f5,
    closed_form_f5_over_8pi,
    critical_points,
    degree_bound,
    derived_quantities,
    endpoint,
    general_bound,
    general_bound_over_8pi,
    linear_envelope,
    optimal_bound_for_n,
    yang_yau,
    yang_yau_over_8pi,
)
from .fields import FLOAT, FloatField, IntervalField
from .interval import Certainty, RationalInterval, certified_less, interval_arith, sqrt_enclosure

__version__ = "0.1.0"
