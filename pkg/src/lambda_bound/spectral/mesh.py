"""Closed orientable triangle meshes: OFF input/output and topology checks."""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from ..errors import (
    DegenerateTriangle,
    DisconnectedMesh,
    NonManifoldEdge,
    NonOrientable,
    ParseError,
)

# triangles with area below this fraction of their squared longest edge are degenerate
_DEGENERATE_RTOL = 1e-12


@dataclass
class MeshSurface:
    """A validated closed, connected, consistently oriented triangle mesh.

    ``vertices`` is ``(V, k)`` with ``k >= 2``; OFF files always give ``k = 3``
    but meshes built in memory may live in higher dimensions (e.g. a flat
    torus embedded in R^4).
    """

    vertices: np.ndarray
    faces: np.ndarray
    edges: np.ndarray = field(init=False, repr=False)
    triangle_areas: np.ndarray = field(init=False, repr=False)
    reoriented: bool = field(init=False, default=False)

    def __post_init__(self):
        self.vertices = np.ascontiguousarray(self.vertices, dtype=np.float64)
        self.faces = np.ascontiguousarray(self.faces, dtype=np.int64)
        if self.vertices.ndim != 2 or self.vertices.shape[1] < 2:
            raise ParseError("vertices must be a (V, k) array with k >= 2")
        if self.faces.ndim != 2 or self.faces.shape[1] != 3:
            raise ParseError("faces must be a (F, 3) array of vertex indices")
        _validate(self)

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_faces(self) -> int:
        return self.faces.shape[0]

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    @property
    def area(self) -> float:
        return float(self.triangle_areas.sum())

    def max_edge_length(self) -> float:
        d = self.vertices[self.edges[:, 0]] - self.vertices[self.edges[:, 1]]
        return float(np.sqrt((d * d).sum(axis=1)).max())

    def scaled(self, s: float) -> "MeshSurface":
        return MeshSurface(self.vertices * s, self.faces.copy())


def _triangle_areas(v: np.ndarray, f: np.ndarray):
    e1 = v[f[:, 1]] - v[f[:, 0]]
    e2 = v[f[:, 2]] - v[f[:, 0]]
    e3 = v[f[:, 2]] - v[f[:, 1]]
    a = (e1 * e1).sum(1)
    b = (e2 * e2).sum(1)
    ab = (e1 * e2).sum(1)
    areas = 0.5 * np.sqrt(np.maximum(a * b - ab * ab, 0.0))
    longest = np.maximum(np.maximum(a, b), (e3 * e3).sum(1))
    return areas, longest


def _validate(mesh: MeshSurface) -> None:
    v, f = mesh.vertices, mesh.faces
    nv, nf = v.shape[0], f.shape[0]
    if nf == 0:
        raise ParseError("mesh has no faces")
    if f.min() < 0 or f.max() >= nv:
        raise ParseError(f"face index out of range [0, {nv})")
    if not np.all(np.isfinite(v)):
        raise ParseError("non-finite vertex coordinate")

    repeated = (f[:, 0] == f[:, 1]) | (f[:, 1] == f[:, 2]) | (f[:, 0] == f[:, 2])
    areas, longest = _triangle_areas(v, f)
    bad = repeated | ~(areas > _DEGENERATE_RTOL * longest)
    if bad.any():
        t = int(np.flatnonzero(bad)[0])
        raise DegenerateTriangle(f"triangle {t} {f[t].tolist()} has zero area")

    # half-edges (a -> b) of every face, keyed by the undirected edge
    tail = f.ravel()
    head = f[:, [1, 2, 0]].ravel()
    lo = np.minimum(tail, head)
    hi = np.maximum(tail, head)
    key = lo * nv + hi
    order = np.argsort(key, kind="stable")
    skey = key[order]
    uniq, start, counts = np.unique(skey, return_index=True, return_counts=True)
    if np.any(counts != 2):
        k = int(np.flatnonzero(counts != 2)[0])
        a, b = divmod(int(uniq[k]), nv)
        what = "boundary edge" if counts[k] == 1 else f"edge shared by {counts[k]} faces"
        raise NonManifoldEdge(f"{what} ({a}, {b}); the surface must be closed and manifold")
    he_face = np.repeat(np.arange(nf), 3)
    forward = tail < head
    first = order[start]
    second = order[start + 1]
    fa, fb = he_face[first], he_face[second]
    # faces agree in orientation iff they traverse the shared edge oppositely
    same_dir = forward[first] == forward[second]

    adjacency = [[] for _ in range(nf)]
    for x, y, s in zip(fa.tolist(), fb.tolist(), same_dir.tolist()):
        adjacency[x].append((y, s))
        adjacency[y].append((x, s))
    flip = np.zeros(nf, dtype=np.int8)
    flip[0] = 1
    queue = deque([0])
    seen = 1
    while queue:
        x = queue.popleft()
        for y, s in adjacency[x]:
            want = -flip[x] if s else flip[x]
            if flip[y] == 0:
                flip[y] = want
                seen += 1
                queue.append(y)
            elif flip[y] != want:
                raise NonOrientable("no consistent orientation of the faces exists")
    if seen != nf:
        raise DisconnectedMesh(f"mesh has more than one connected component ({seen} of {nf} faces reached)")
    used = np.zeros(nv, dtype=bool)
    used[f.ravel()] = True
    if not used.all():
        raise DisconnectedMesh(f"{int((~used).sum())} vertices are not referenced by any face")
    _check_vertex_links(f, nv)

    if (flip < 0).any():
        f = f.copy()
        rev = flip < 0
        f[rev] = f[rev][:, ::-1]
        mesh.faces = f
        mesh.reoriented = True
    mesh.edges = np.stack([uniq // nv, uniq % nv], axis=1)
    mesh.triangle_areas = areas


def _check_vertex_links(f: np.ndarray, nv: int) -> None:
    """Every vertex star must be a single fan (disc), not several glued at a point.

    With every edge in exactly two faces the link of a vertex is a union of
    cycles; a pinched vertex has more than one.
    """
    stars = [[] for _ in range(nv)]
    for t, (a, b, c) in enumerate(f.tolist()):
        stars[a].append((b, c))
        stars[b].append((c, a))
        stars[c].append((a, b))
    for vtx, star in enumerate(stars):
        nxt = {}
        for b, c in star:
            nxt.setdefault(b, []).append(c)
            nxt.setdefault(c, []).append(b)
        start = star[0][0]
        prev, cur, steps = None, start, 0
        while True:
            nbrs = nxt[cur]
            step = nbrs[0] if nbrs[0] != prev else nbrs[1]
            prev, cur = cur, step
            steps += 1
            if cur == start or steps > len(star):
                break
        if steps != len(star):
            raise NonManifoldEdge(f"vertex {vtx} is a non-manifold (pinched) vertex")


def load_off(path: Union[str, os.PathLike]) -> MeshSurface:
    """Read an ASCII OFF file of triangles (zero-based indices)."""
    with open(path, "r", encoding="ascii", errors="strict") as fh:
        lines = []
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                lines.append(line)
    if not lines or lines[0].split()[0] != "OFF":
        raise ParseError(f"{path}: missing OFF header")
    head_tokens = lines[0].split()[1:]
    body = lines[1:]
    if not head_tokens:
        if not body:
            raise ParseError(f"{path}: missing counts line")
        head_tokens = body[0].split()
        body = body[1:]
    try:
        nv, nf = int(head_tokens[0]), int(head_tokens[1])
    except (IndexError, ValueError):
        raise ParseError(f"{path}: malformed counts line {' '.join(head_tokens)!r}") from None
    if nv < 0 or nf < 0:
        raise ParseError(f"{path}: negative element counts")
    if len(body) < nv + nf:
        raise ParseError(f"{path}: expected {nv} vertices and {nf} faces, file ends early")
    try:
        verts = np.array([[float(t) for t in line.split()] for line in body[:nv]], dtype=np.float64)
    except ValueError as exc:
        raise ParseError(f"{path}: bad vertex line ({exc})") from None
    if nv and (verts.ndim != 2 or verts.shape[1] != 3):
        raise ParseError(f"{path}: every vertex line must hold exactly three coordinates")
    faces = np.empty((nf, 3), dtype=np.int64)
    for i, line in enumerate(body[nv:nv + nf]):
        tok = line.split()
        try:
            vals = [int(t) for t in tok]
        except ValueError:
            raise ParseError(f"{path}: bad face line {line!r}") from None
        if vals[0] != 3:
            raise ParseError(f"{path}: face {i} has {vals[0]} vertices; only triangles are supported")
        if len(vals) != 4:
            raise ParseError(f"{path}: face {i} must be '3 i j k', got {line!r}")
        faces[i] = vals[1:]
    if len(body) > nv + nf:
        raise ParseError(f"{path}: trailing data after {nv + nf} element lines")
    return MeshSurface(verts.reshape(nv, 3), faces)


def write_off(path: Union[str, os.PathLike], mesh: MeshSurface) -> None:
    if mesh.vertices.shape[1] != 3:
        raise ValueError("OFF output needs vertices in R^3")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("OFF\n")
        fh.write(f"{mesh.n_vertices} {mesh.n_faces} {mesh.n_edges}\n")
        for x, y, z in mesh.vertices.tolist():
            fh.write(f"{x!r} {y!r} {z!r}\n")
        for a, b, c in mesh.faces.tolist():
            fh.write(f"3 {a} {b} {c}\n")
