import math

import numpy as np
import pytest

from lambda_bound.errors import (
    DegenerateLattice,
    DegenerateTriangle,
    DisconnectedMesh,
    NonManifoldEdge,
    NonOrientable,
    ParseError,
)
from lambda_bound.spectral import (
    InverseIteration,
    Lattice2D,
    MeshSurface,
    SpectrumMethod,
    assemble,
    check_against_bound,
    flat_torus,
    icosahedron,
    icosphere,
    load_off,
    mesh_normalized_lambda1,
    multi_hole_slab,
    shortest_dual_sq,
    sphere_normalized_lambda1,
    torus_normalized_lambda1,
    voxel_surface,
    write_off,
)
from lambda_bound.spectral.lattice import enumeration_window

import oracles

EQUILATERAL = Lattice2D((1.0, 0.0), (0.5, math.sqrt(3) / 2))


def off_text(vertices, faces):
    lines = ["OFF", f"{len(vertices)} {len(faces)} 0"]
    lines += [" ".join(map(str, v)) for v in vertices]
    lines += ["3 " + " ".join(map(str, f)) for f in faces]
    return "\n".join(lines) + "\n"


TETRA_V = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
TETRA_F = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]


# --- analytic spectra -------------------------------------------------------

def test_equilateral_torus():
    r = torus_normalized_lambda1(EQUILATERAL)
    assert r.method is SpectrumMethod.ANALYTIC_LATTICE
    assert r.normalized == pytest.approx(8 * math.pi**2 / math.sqrt(3), rel=1e-9)
    assert r.normalized <= 16 * math.pi


def test_square_torus():
    r = torus_normalized_lambda1(Lattice2D((1.0, 0.0), (0.0, 1.0)))
    assert r.normalized == pytest.approx(4 * math.pi**2, rel=1e-9)


@pytest.mark.parametrize("v1, v2", [((1, 0), (0.3, 0.01)), ((2, 1), (-1, 3)), ((1, 0), (7.5, 0.2))])
def test_torus_against_brute_force(v1, v2):
    r = torus_normalized_lambda1(Lattice2D(v1, v2))
    det = abs(v1[0] * v2[1] - v1[1] * v2[0])
    expected = 4 * math.pi**2 * oracles.shortest_dual_brute(v1, v2, k=60) * det
    assert r.normalized == pytest.approx(expected, rel=1e-12)


def test_window_doubling_sentinel():
    lat = Lattice2D((1.0, 0.0), (0.37, 0.013))
    w = lat.dual_basis()
    gram = w.T @ w
    window = enumeration_window(gram, min(gram[0, 0], gram[1, 1]))
    full = shortest_dual_sq(lat)
    assert shortest_dual_sq(lat, tuple(2 * k for k in window)) == full
    # a window below the proven radius misses the minimum, and doubling exposes it
    small = (1, 1)
    assert shortest_dual_sq(lat, small) != shortest_dual_sq(lat, (2, 2)) or shortest_dual_sq(lat, small) > full


def test_degenerate_lattice():
    with pytest.raises(DegenerateLattice):
        Lattice2D((1.0, 2.0), (2.0, 4.0))


def test_round_sphere_equals_8pi():
    r = sphere_normalized_lambda1(3.0)
    assert r.normalized == pytest.approx(8 * math.pi, rel=1e-15)
    assert check_against_bound(r, 0).passed


# --- OFF parsing and mesh validation ---------------------------------------

def test_load_tetrahedron(tmp_path):
    p = tmp_path / "t.off"
    p.write_text(off_text(TETRA_V, TETRA_F))
    m = load_off(p)
    assert (m.n_vertices, m.n_faces, m.n_edges) == (4, 4, 6)
    assert m.euler_characteristic == 2 and m.genus == 0


def test_icosahedron_genus0():
    m = icosahedron()
    assert (m.n_vertices, m.n_faces, m.genus) == (12, 20, 0)


def test_flat_torus_mesh_genus1():
    m = flat_torus(8, 6)
    assert m.genus == 1 and m.vertices.shape[1] == 4
    # chords of the embedding shorten the area at low resolution
    assert flat_torus(64, 64).area == pytest.approx(1.0, rel=2e-3)


@pytest.mark.parametrize("holes", [0, 1, 2, 3])
def test_slab_genus(holes):
    assert multi_hole_slab(holes, 1).genus == holes


def test_voxel_cube_genus0():
    assert voxel_surface(np.ones((1, 1, 1), dtype=bool)).genus == 0


def test_round_trip(tmp_path):
    m = icosphere(2)
    p = tmp_path / "s.off"
    write_off(p, m)
    back = load_off(p)
    np.testing.assert_allclose(back.vertices, m.vertices, rtol=0, atol=1e-15)
    np.testing.assert_array_equal(back.faces, m.faces)


def test_edge_in_three_faces():
    v = TETRA_V + [(0, 0, 3)]
    f = TETRA_F + [(0, 1, 4)]
    with pytest.raises(NonManifoldEdge):
        MeshSurface(np.array(v, float), np.array(f))


def test_open_surface_rejected():
    with pytest.raises(NonManifoldEdge):
        MeshSurface(np.array(TETRA_V, float), np.array(TETRA_F[:3]))


def test_non_orientable():
    # 6-vertex real projective plane
    f = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
         (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    rng = np.random.default_rng(0)
    with pytest.raises(NonOrientable):
        MeshSurface(rng.normal(size=(6, 3)), np.array(f))


def test_misoriented_face_is_fixed():
    f = [TETRA_F[0][::-1]] + TETRA_F[1:]
    m = MeshSurface(np.array(TETRA_V, float), np.array(f))
    assert m.reoriented


def test_degenerate_triangle():
    v = [(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0)]
    with pytest.raises(DegenerateTriangle):
        MeshSurface(np.array(v, float), np.array(TETRA_F))


def test_disconnected():
    v = TETRA_V + [(x + 10, y, z) for x, y, z in TETRA_V]
    f = TETRA_F + [(a + 4, b + 4, c + 4) for a, b, c in TETRA_F]
    with pytest.raises(DisconnectedMesh):
        MeshSurface(np.array(v, float), np.array(f))


@pytest.mark.parametrize(
    "text",
    [
        "",
        "NOFF\n",
        "OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n",
        "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n4 0 1 2 0\n",
        "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 9\n",
        "OFF\n3 1 0\n0 0 x\n1 0 0\n0 1 0\n3 0 1 2\n",
    ],
    ids=["empty", "header", "truncated", "quad", "index", "number"],
)
def test_parse_errors(tmp_path, text):
    p = tmp_path / "bad.off"
    p.write_text(text)
    with pytest.raises(ParseError):
        load_off(p)


# --- discrete operator -------------------------------------------------------

@pytest.mark.parametrize("mesh", [icosphere(2), flat_torus(10, 7), multi_hole_slab(2, 1)], ids=["sphere", "torus", "slab"])
def test_stiffness_and_mass(mesh):
    k, m = assemble(mesh)
    dense = k.toarray()
    np.testing.assert_allclose(dense, dense.T, rtol=0, atol=1e-13)
    scale = np.abs(dense).max()
    assert np.abs(dense.sum(axis=1)).max() <= 1e-10 * scale
    assert np.linalg.eigvalsh(dense).min() >= -1e-10 * scale
    assert np.all(m > 0)
    assert m.sum() == pytest.approx(mesh.area, rel=1e-14)


def test_eigenpair_postconditions():
    mesh = icosphere(3)
    k, m = assemble(mesh)
    it = InverseIteration(k, m)
    lam, x, res, _ = it.run(tol=1e-9)
    assert res <= 1e-9
    assert it.rayleigh(x) == pytest.approx(lam, rel=1e-9)
    assert abs(m @ x) / math.sqrt(m.sum()) <= 1e-9


def test_scale_invariance():
    mesh = icosphere(3)
    a = mesh_normalized_lambda1(mesh, tol=1e-12).normalized
    b = mesh_normalized_lambda1(mesh.scaled(7.3), tol=1e-12).normalized
    assert b == pytest.approx(a, rel=1e-9)


def test_icosphere_convergence_order():
    hs, errs = [], []
    for k in range(1, 5):
        mesh = icosphere(k)
        r = mesh_normalized_lambda1(mesh)
        hs.append(mesh.max_edge_length())
        errs.append(abs(r.normalized - 8 * math.pi))
    assert errs == sorted(errs, reverse=True)
    order = np.polyfit(np.log(hs), np.log(errs), 1)[0]
    assert order >= 1.0


def test_genus2_mesh_respects_bound():
    mesh = multi_hole_slab(2, 2)
    r = mesh_normalized_lambda1(mesh)
    cmp = check_against_bound(r, mesh.genus)
    assert cmp.passed and cmp.slack == 0.02
    assert cmp.bound == pytest.approx(16 * math.pi, rel=1e-15)


def test_negative_slack_rejected():
    with pytest.raises(ValueError):
        check_against_bound(sphere_normalized_lambda1(), 0, slack=-0.1)
