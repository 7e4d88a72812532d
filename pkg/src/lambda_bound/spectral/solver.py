"""Cotangent Laplacian and inverse power iteration for the first nonzero eigenvalue."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .. import kernels
from ..errors import NumericallySingular, SolverDivergence
from .mesh import MeshSurface
from .result import SpectrumMethod, SpectrumResult

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 5000


def assemble(mesh: MeshSurface):
    """Return ``(K, m)``: cotangent stiffness (CSR) and lumped barycentric mass vector."""
    rows, cols, vals, mass, _ = kernels.cotan_assemble(mesh.vertices, mesh.faces)
    n = mesh.n_vertices
    stiffness = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    stiffness.sum_duplicates()
    return stiffness, mass


class InverseIteration:
    """Inverse power iteration on ``K x = lambda M x`` restricted to ``1^T M x = 0``.

    Each step solves the bordered system ``[[K, m], [m^T, 0]] [y, mu] = [M x, 0]``,
    which is nonsingular for a connected mesh and keeps iterates mass-orthogonal
    to the constants, i.e. the zero eigenvalue is deflated inside the solve.
    An instance owns its factorisation and work vectors; use one per thread.
    """

    def __init__(self, stiffness, mass):
        self.K = sp.csr_matrix(stiffness)
        self.m = np.asarray(mass, dtype=np.float64)
        if np.any(self.m <= 0):
            raise NumericallySingular("lumped mass has a non-positive entry")
        n = self.m.shape[0]
        col = sp.csr_matrix(self.m.reshape(n, 1))
        bordered = sp.bmat([[self.K, col], [col.T, None]], format="csc")
        try:
            self._lu = spla.splu(bordered)
        except RuntimeError as exc:
            raise NumericallySingular(f"factorisation failed: {exc}") from None
        self._rhs = np.zeros(n + 1)

    def _deflate(self, x):
        return x - (self.m @ x) / self.m.sum()

    def _m_norm(self, x):
        return float(np.sqrt(x @ (self.m * x)))

    def rayleigh(self, x) -> float:
        return float(x @ (self.K @ x)) / float(x @ (self.m * x))

    def residual(self, x, lam) -> float:
        """``||K x - lam M x||_{M^-1} / (lam ||x||_M)``."""
        r = self.K @ x - lam * (self.m * x)
        return float(np.sqrt(r @ (r / self.m))) / (abs(lam) * self._m_norm(x))

    def run(self, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER, seed: int = 0):
        rng = np.random.default_rng(seed)
        n = self.m.shape[0]
        x = self._deflate(rng.standard_normal(n))
        x /= self._m_norm(x)
        lam, res = np.nan, np.inf
        for it in range(1, max_iter + 1):
            self._rhs[:n] = self.m * x
            y = self._lu.solve(self._rhs)[:n]
            if not np.all(np.isfinite(y)):
                raise NumericallySingular("non-finite iterate in inverse iteration")
            y = self._deflate(y)
            nrm = self._m_norm(y)
            if nrm == 0.0:
                raise NumericallySingular("iterate collapsed to zero")
            x = y / nrm
            lam = self.rayleigh(x)
            res = self.residual(x, lam)
            if res <= tol:
                return lam, x, res, it
        raise SolverDivergence(f"no convergence after {max_iter} iterations (residual {res:.3e} > {tol:.1e})")


def mesh_normalized_lambda1(
    mesh: MeshSurface, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER, seed: int = 0
) -> SpectrumResult:
    """Smallest nonzero eigenvalue of the cotangent Laplacian times total area."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    stiffness, mass = assemble(mesh)
    lam, x, res, it = InverseIteration(stiffness, mass).run(tol, max_iter, seed)
    if lam <= 0:
        raise NumericallySingular(f"non-positive first eigenvalue {lam!r}")
    area = mesh.area
    return SpectrumResult(lam, area, lam * area, SpectrumMethod.DISCRETE_COTANGENT, res, it, x)
