"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba path is used when numba imports and ``LAMBDA_BOUND_DISABLE_NUMBA``
is unset (or ``0``).  Both implementations are always importable through
:data:`NUMPY_KERNELS` and :data:`NUMBA_KERNELS` so they can be cross-checked
and benchmarked against each other.
"""
from __future__ import annotations

import math
import os

import numpy as np

DISABLE_ENV = "LAMBDA_BOUND_DISABLE_NUMBA"

# location codes shared by both paths, decoded by bounds.ALocation order
LOC_ZERO, LOC_INTERIOR, LOC_POS, LOC_NEG = 0, 1, 2, 3


def _numba_requested() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in ("", "0", "false", "no")


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# pure numpy implementations
# ---------------------------------------------------------------------------

def _np_family(a, n, d, delta):
    c = (n - 1.0) / (n + 1.0)
    return d * (1.0 + (2.0 * a * a * delta - c) / ((2.0 * a - 1.0) ** 2 + c))


def _np_optimal_sweep(n, genera):
    g = np.asarray(genera, dtype=np.int64)
    d = -((-n * g) // (n + 1)) + n
    df = d.astype(np.float64)
    delta = 1.0 + (g - 1.0) / df
    e = 1.0 / math.sqrt(2.0 * n * (n + 1))
    best_a = np.zeros(g.shape)
    best_v = _np_family(0.0, n, df, delta)
    loc = np.full(g.shape, LOC_ZERO, dtype=np.int64)
    if n >= 2:
        xi = n * delta + (n - 1.0)
        disc = xi * xi - 2.0 * (n * n - 1.0) * delta
        with np.errstate(invalid="ignore", divide="ignore"):
            a_min = (n - 1.0) / (xi + np.sqrt(disc))
        admissible = (delta > 0) & (np.abs(a_min) <= e)
        v = np.where(admissible, _np_family(a_min, n, df, delta), np.inf)
        take = v < best_v
        best_a = np.where(take, a_min, best_a)
        best_v = np.where(take, v, best_v)
        loc = np.where(take, LOC_INTERIOR, loc)
        v = _np_family(e, n, df, delta)
        take = v < best_v
        best_a = np.where(take, e, best_a)
        best_v = np.where(take, v, best_v)
        loc = np.where(take, LOC_POS, loc)
    v = _np_family(-e, n, df, delta)
    take = v < best_v
    best_a = np.where(take, -e, best_a)
    best_v = np.where(take, v, best_v)
    loc = np.where(take, LOC_NEG, loc)
    return best_a, best_v, loc


def _np_closed_form_f5(genera):
    g = np.asarray(genera, dtype=np.int64)
    s15 = math.sqrt(15.0)
    ceil_term = (-((-5 * g) // 6)).astype(np.float64)
    return (g + (33.0 - 4.0 * s15) * ceil_term + 4.0 * (41.0 - 5.0 * s15)) / (4.0 * (13.0 - s15))


def _np_cotan_assemble(vertices, faces):
    v = np.asarray(vertices, dtype=np.float64)
    f = np.asarray(faces, dtype=np.int64)
    nf = f.shape[0]
    rows = np.empty(12 * nf, dtype=np.int64)
    cols = np.empty(12 * nf, dtype=np.int64)
    vals = np.empty(12 * nf, dtype=np.float64)
    areas = np.empty(nf, dtype=np.float64)
    p = [v[f[:, k]] for k in range(3)]
    e01 = p[1] - p[0]
    e02 = p[2] - p[0]
    g = np.einsum("ij,ij->i", e01, e01) * np.einsum("ij,ij->i", e02, e02) - np.einsum("ij,ij->i", e01, e02) ** 2
    twice_area = np.sqrt(np.maximum(g, 0.0))
    areas[:] = 0.5 * twice_area
    pos = 0
    for k in range(3):
        i, j = (k + 1) % 3, (k + 2) % 3
        u = p[i] - p[k]
        w = p[j] - p[k]
        cot = np.einsum("ij,ij->i", u, w) / twice_area
        half = 0.5 * cot
        for r, c, s in ((i, j, -half), (j, i, -half), (i, i, half), (j, j, half)):
            rows[pos:pos + nf] = f[:, r]
            cols[pos:pos + nf] = f[:, c]
            vals[pos:pos + nf] = s
            pos += nf
    mass = np.bincount(f.ravel(), weights=np.repeat(areas / 3.0, 3), minlength=v.shape[0])
    return rows[:pos], cols[:pos], vals[:pos], mass, areas


def _np_shortest_vector(gram, k1, k2):
    i = np.arange(-k1, k1 + 1, dtype=np.float64)[:, None]
    j = np.arange(-k2, k2 + 1, dtype=np.float64)[None, :]
    q = gram[0, 0] * i * i + 2.0 * gram[0, 1] * i * j + gram[1, 1] * j * j
    q[k1, k2] = np.inf
    flat = int(np.argmin(q))
    bi, bj = divmod(flat, 2 * k2 + 1)
    return float(q[bi, bj]), bi - k1, bj - k2


# ---------------------------------------------------------------------------
# loop implementations, compiled with numba when available
# ---------------------------------------------------------------------------

def _loop_family(a, n, d, delta):
    c = (n - 1.0) / (n + 1.0)
    t = 2.0 * a - 1.0
    return d * (1.0 + (2.0 * a * a * delta - c) / (t * t + c))


def _loop_optimal_sweep(n, genera):
    m = genera.shape[0]
    out_a = np.zeros(m)
    out_v = np.zeros(m)
    out_loc = np.zeros(m, dtype=np.int64)
    e = 1.0 / math.sqrt(2.0 * n * (n + 1))
    for idx in range(m):
        g = genera[idx]
        d = -((-n * g) // (n + 1)) + n
        df = float(d)
        delta = 1.0 + (g - 1.0) / df
        ba = 0.0
        bv = _loop_family(0.0, n, df, delta)
        bl = LOC_ZERO
        if n >= 2:
            if delta > 0.0:
                xi = n * delta + (n - 1.0)
                disc = xi * xi - 2.0 * (n * n - 1.0) * delta
                a_min = (n - 1.0) / (xi + math.sqrt(disc))
                if abs(a_min) <= e:
                    v = _loop_family(a_min, n, df, delta)
                    if v < bv:
                        ba, bv, bl = a_min, v, LOC_INTERIOR
            v = _loop_family(e, n, df, delta)
            if v < bv:
                ba, bv, bl = e, v, LOC_POS
        v = _loop_family(-e, n, df, delta)
        if v < bv:
            ba, bv, bl = -e, v, LOC_NEG
        out_a[idx] = ba
        out_v[idx] = bv
        out_loc[idx] = bl
    return out_a, out_v, out_loc


def _loop_closed_form_f5(genera):
    s15 = math.sqrt(15.0)
    m = genera.shape[0]
    out = np.empty(m)
    for idx in range(m):
        g = genera[idx]
        ceil_term = -((-5 * g) // 6)
        out[idx] = (g + (33.0 - 4.0 * s15) * ceil_term + 4.0 * (41.0 - 5.0 * s15)) / (4.0 * (13.0 - s15))
    return out


def _loop_cotan_assemble(vertices, faces):
    nv = vertices.shape[0]
    nf = faces.shape[0]
    dim = vertices.shape[1]
    rows = np.empty(12 * nf, dtype=np.int64)
    cols = np.empty(12 * nf, dtype=np.int64)
    vals = np.empty(12 * nf, dtype=np.float64)
    areas = np.empty(nf)
    mass = np.zeros(nv)
    pos = 0
    for t in range(nf):
        a0 = 0.0
        b0 = 0.0
        ab = 0.0
        for c in range(dim):
            x = vertices[faces[t, 1], c] - vertices[faces[t, 0], c]
            y = vertices[faces[t, 2], c] - vertices[faces[t, 0], c]
            a0 += x * x
            b0 += y * y
            ab += x * y
        twice_area = math.sqrt(max(a0 * b0 - ab * ab, 0.0))
        areas[t] = 0.5 * twice_area
        for k in range(3):
            mass[faces[t, k]] += areas[t] / 3.0
        for k in range(3):
            i = faces[t, (k + 1) % 3]
            j = faces[t, (k + 2) % 3]
            o = faces[t, k]
            dot = 0.0
            for c in range(dim):
                dot += (vertices[i, c] - vertices[o, c]) * (vertices[j, c] - vertices[o, c])
            half = 0.5 * dot / twice_area
            rows[pos] = i
            cols[pos] = j
            vals[pos] = -half
            rows[pos + 1] = j
            cols[pos + 1] = i
            vals[pos + 1] = -half
            rows[pos + 2] = i
            cols[pos + 2] = i
            vals[pos + 2] = half
            rows[pos + 3] = j
            cols[pos + 3] = j
            vals[pos + 3] = half
            pos += 4
    return rows[:pos], cols[:pos], vals[:pos], mass, areas


def _loop_shortest_vector(gram, k1, k2):
    best = np.inf
    bi = 0
    bj = 0
    for i in range(-k1, k1 + 1):
        for j in range(-k2, k2 + 1):
            if i == 0 and j == 0:
                continue
            q = gram[0, 0] * i * i + 2.0 * gram[0, 1] * i * j + gram[1, 1] * j * j
            if q < best:
                best = q
                bi = i
                bj = j
    return best, bi, bj


NUMPY_KERNELS = {
    "optimal_sweep": _np_optimal_sweep,
    "closed_form_f5": _np_closed_form_f5,
    "cotan_assemble": _np_cotan_assemble,
    "shortest_vector": _np_shortest_vector,
}

if HAVE_NUMBA:
    _jit = numba.njit(cache=True)
    _loop_family = _jit(_loop_family)
    NUMBA_KERNELS = {
        "optimal_sweep": _jit(_loop_optimal_sweep),
        "closed_form_f5": _jit(_loop_closed_form_f5),
        "cotan_assemble": _jit(_loop_cotan_assemble),
        "shortest_vector": _jit(_loop_shortest_vector),
    }
else:  # pragma: no cover
    NUMBA_KERNELS = None

USE_NUMBA = HAVE_NUMBA and _numba_requested()
BACKEND = "numba" if USE_NUMBA else "numpy"
_ACTIVE = NUMBA_KERNELS if USE_NUMBA else NUMPY_KERNELS


def optimal_sweep(n: int, genera):
    """Vectorised ``optimal_bound_for_n`` in doubles: returns ``(a, value/8pi, location code)``."""
    return _ACTIVE["optimal_sweep"](int(n), np.ascontiguousarray(genera, dtype=np.int64))


def closed_form_f5_sweep(genera):
    return _ACTIVE["closed_form_f5"](np.ascontiguousarray(genera, dtype=np.int64))


def cotan_assemble(vertices, faces):
    """COO triplets of the cotangent stiffness matrix plus lumped mass and triangle areas."""
    return _ACTIVE["cotan_assemble"](
        np.ascontiguousarray(vertices, dtype=np.float64), np.ascontiguousarray(faces, dtype=np.int64)
    )


def shortest_vector(gram, k1: int, k2: int):
    """Minimum of ``k^T gram k`` over nonzero integer ``k`` with ``|k_i| <= (k1, k2)``."""
    return _ACTIVE["shortest_vector"](np.ascontiguousarray(gram, dtype=np.float64), int(k1), int(k2))
