"""Mesh generators used by the tests, the CLI and the benchmark."""
from __future__ import annotations

import math

import numpy as np

from .mesh import MeshSurface


def icosahedron(radius: float = 1.0) -> MeshSurface:
    t = (1.0 + math.sqrt(5.0)) / 2.0
    v = np.array(
        [
            [-1, t, 0], [1, t, 0], [-1, -t, 0], [1, -t, 0],
            [0, -1, t], [0, 1, t], [0, -1, -t], [0, 1, -t],
            [t, 0, -1], [t, 0, 1], [-t, 0, -1], [-t, 0, 1],
        ],
        dtype=np.float64,
    )
    v *= radius / np.linalg.norm(v[0])
    f = np.array(
        [
            [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
            [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
            [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
            [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
        ],
        dtype=np.int64,
    )
    return MeshSurface(v, f)


def icosphere(subdivisions: int, radius: float = 1.0) -> MeshSurface:
    """Loop-style 1:4 subdivision of the icosahedron projected onto the sphere."""
    base = icosahedron(1.0)
    verts = [tuple(p) for p in base.vertices]
    faces = base.faces.tolist()
    for _ in range(subdivisions):
        cache = {}

        def midpoint(a, b):
            key = (a, b) if a < b else (b, a)
            if key not in cache:
                p = (np.asarray(verts[a]) + np.asarray(verts[b])) / 2.0
                verts.append(tuple(p / np.linalg.norm(p)))
                cache[key] = len(verts) - 1
            return cache[key]

        new_faces = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new_faces += [[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]
        faces = new_faces
    return MeshSurface(np.array(verts) * radius, np.array(faces, dtype=np.int64))


def flat_torus(nu: int, nv: int, width: float = 1.0, height: float = 1.0) -> MeshSurface:
    """Structured grid on the flat torus ``[0,w] x [0,h]``, embedded isometrically in R^4.

    Uses the Clifford-type embedding
    ``(w cos(2 pi u/w), w sin(2 pi u/w), h cos(2 pi v/h), h sin(2 pi v/h)) / (2 pi)``,
    whose induced metric is exactly the flat one; the triangles are its chords.
    """
    if nu < 3 or nv < 3:
        raise ValueError("need at least 3 cells in each direction")
    i, j = np.meshgrid(np.arange(nu), np.arange(nv), indexing="ij")
    s = 2.0 * math.pi * i.ravel() / nu
    t = 2.0 * math.pi * j.ravel() / nv
    verts = np.stack(
        [width * np.cos(s), width * np.sin(s), height * np.cos(t), height * np.sin(t)], axis=1
    ) / (2.0 * math.pi)
    idx = lambda a, b: (a % nu) * nv + (b % nv)  # noqa: E731
    faces = []
    for a in range(nu):
        for b in range(nv):
            p, q, r, w = idx(a, b), idx(a + 1, b), idx(a + 1, b + 1), idx(a, b + 1)
            faces.append([p, q, r])
            faces.append([p, r, w])
    return MeshSurface(verts, np.array(faces, dtype=np.int64))


def voxel_surface(mask, refine: int = 1, spacing: float = 1.0) -> MeshSurface:
    """Outward-oriented boundary of a union of unit voxels, each face split into ``refine**2`` quads.

    The voxel set must not touch itself along an edge or at a vertex only,
    otherwise the boundary is not a manifold.
    """
    mask = np.asarray(mask, dtype=bool)
    padded = np.pad(mask, 1)
    r = int(refine)
    lookup = {}
    verts = []
    faces = []

    def vid(p):
        key = tuple(p)
        if key not in lookup:
            lookup[key] = len(verts)
            verts.append(key)
        return lookup[key]

    for ax in range(3):
        u, w = (ax + 1) % 3, (ax + 2) % 3
        for sgn in (1, -1):
            step = np.zeros(3, dtype=int)
            step[ax] = sgn
            for cell in zip(*np.nonzero(mask)):
                cell = np.array(cell)
                nb = cell + 1 + step
                if padded[tuple(nb)]:
                    continue
                base = cell * r
                if sgn > 0:
                    base[ax] += r
                for a in range(r):
                    for b in range(r):
                        corners = []
                        for du, dw in ((0, 0), (1, 0), (1, 1), (0, 1)):
                            p = base.copy()
                            p[u] += a + du
                            p[w] += b + dw
                            corners.append(vid(p))
                        if sgn < 0:
                            corners = corners[::-1]
                        c0, c1, c2, c3 = corners
                        faces.append([c0, c1, c2])
                        faces.append([c0, c2, c3])
    v = np.array(verts, dtype=np.float64) * (spacing / r)
    return MeshSurface(v, np.array(faces, dtype=np.int64))


def multi_hole_slab(holes: int, refine: int = 2) -> MeshSurface:
    """Genus-``holes`` surface: boundary of a ``(2 holes + 1) x 3 x 1`` voxel slab with ``holes`` holes."""
    if holes < 0:
        raise ValueError("holes must be non-negative")
    mask = np.ones((2 * holes + 1, 3, 1), dtype=bool)
    for h in range(holes):
        mask[2 * h + 1, 1, 0] = False
    return voxel_surface(mask, refine)
