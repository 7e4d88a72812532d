"""Computable first eigenvalues used to sanity-check the bounds."""
from .compare import DISCRETE_SLACK, BoundComparison, check_against_bound
from .lattice import Lattice2D, shortest_dual_sq, sphere_normalized_lambda1, torus_normalized_lambda1
from .mesh import MeshSurface, load_off, write_off
from .result import SpectrumMethod, SpectrumResult
from .shapes import flat_torus, icosahedron, icosphere, multi_hole_slab, voxel_surface
from .solver import InverseIteration, assemble, mesh_normalized_lambda1

__all__ = [
    "DISCRETE_SLACK",
    "BoundComparison",
    "InverseIteration",
    "Lattice2D",
    "MeshSurface",
    "SpectrumMethod",
    "SpectrumResult",
    "assemble",
    "check_against_bound",
    "flat_torus",
    "icosahedron",
    "icosphere",
    "load_off",
    "mesh_normalized_lambda1",
    "multi_hole_slab",
    "shortest_dual_sq",
    "sphere_normalized_lambda1",
    "torus_normalized_lambda1",
    "voxel_surface",
    "write_off",
]
