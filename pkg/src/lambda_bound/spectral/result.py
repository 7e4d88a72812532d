from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class SpectrumMethod(str, enum.Enum):
    ANALYTIC_LATTICE = "AnalyticLattice"
    ANALYTIC_SPHERE = "AnalyticSphere"
    DISCRETE_COTANGENT = "DiscreteCotangent"

    @property
    def analytic(self) -> bool:
        return self is not SpectrumMethod.DISCRETE_COTANGENT


@dataclass
class SpectrumResult:
    lambda1: float
    area: float
    normalized: float
    method: SpectrumMethod
    residual: float
    iterations: int = 0
    eigenvector: Optional[np.ndarray] = field(default=None, repr=False)
