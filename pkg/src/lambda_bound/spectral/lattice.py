"""First eigenvalue of flat tori R^2 / L by dual-lattice enumeration."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import DegenerateLattice
from .result import SpectrumMethod, SpectrumResult


@dataclass(frozen=True)
class Lattice2D:
    v1: tuple
    v2: tuple

    def __post_init__(self):
        if abs(self.determinant) <= 1e-14 * max(1.0, self._scale**2):
            raise DegenerateLattice(f"generators {self.v1} and {self.v2} are linearly dependent")

    @property
    def _scale(self) -> float:
        return max(math.hypot(*self.v1), math.hypot(*self.v2))

    @property
    def basis(self) -> np.ndarray:
        return np.array([self.v1, self.v2], dtype=np.float64).T

    @property
    def determinant(self) -> float:
        return self.v1[0] * self.v2[1] - self.v1[1] * self.v2[0]

    @property
    def area(self) -> float:
        return abs(self.determinant)

    def dual_basis(self) -> np.ndarray:
        """Columns ``w_i`` with ``<w_i, v_j> = delta_ij``."""
        return np.linalg.inv(self.basis).T


def enumeration_window(gram: np.ndarray, radius_sq: float) -> tuple:
    """Index bounds that contain every ``k`` with ``k^T gram k <= radius_sq``.

    For a positive definite form ``Q``, ``k_i**2 <= Q(k) * (Q^-1)_ii``.
    """
    inv = np.linalg.inv(gram)
    return tuple(int(math.floor(math.sqrt(radius_sq * inv[i, i]) * (1 + 1e-12))) + 1 for i in range(2))


def shortest_dual_sq(lattice: Lattice2D, window: tuple | None = None) -> float:
    w = lattice.dual_basis()
    gram = w.T @ w
    if window is None:
        # the basis vectors themselves bound the minimum from above
        window = enumeration_window(gram, min(gram[0, 0], gram[1, 1]))
    best, _, _ = kernels.shortest_vector(gram, *window)
    return float(best)


def torus_normalized_lambda1(lattice: Lattice2D) -> SpectrumResult:
    """``lambda_1 = 4 pi^2 min |w|^2`` over nonzero dual vectors; area ``|det|``."""
    lam = 4.0 * math.pi**2 * shortest_dual_sq(lattice)
    area = lattice.area
    return SpectrumResult(lam, area, lam * area, SpectrumMethod.ANALYTIC_LATTICE, 0.0)


def sphere_normalized_lambda1(radius: float = 1.0) -> SpectrumResult:
    """Round sphere: ``lambda_1 = 2/r^2``, area ``4 pi r^2``."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    lam = 2.0 / radius**2
    area = 4.0 * math.pi * radius**2
    return SpectrumResult(lam, area, lam * area, SpectrumMethod.ANALYTIC_SPHERE, 0.0)
