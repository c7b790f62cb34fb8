"""Conical nets, propagated patterns, packing residuals."""
import numpy as np
import pytest

from contactnets.errors import DegenerateEdge, NotConical
from contactnets.grid import QuadGrid
from contactnets.nets import CirclePattern, ConicalNet
from contactnets.patterns import (
    circle_pattern_from_conical,
    circle_pattern_residual,
    conical_residual,
    cycle_pattern_from_conical,
    cycle_pattern_residual,
    is_circle_packing_residual,
)

S2 = np.sqrt(2.0)


def lattice(w, h):
    ii, jj = np.meshgrid(np.arange(w), np.arange(h), indexing="ij")
    centers = np.stack([ii, jj], axis=-1).astype(float)
    return ConicalNet(QuadGrid(w, h), centers)


def test_conical_residual_square_lattice_zero():
    net = lattice(4, 4)
    for v in net.grid.interior_vertices():
        assert conical_residual(net, v) < 1e-12


def test_conical_residual_detects_displaced_center():
    net = lattice(5, 5)
    centers = net.centers.copy()
    centers[2, 2] += np.array([0.07, 0.1])
    bent = ConicalNet(net.grid, centers)
    for v in ((1, 2), (2, 1), (3, 2), (2, 3)):
        assert conical_residual(bent, v) > 1e-3


def test_conical_residual_coincident_centers_raise():
    net = lattice(4, 4)
    centers = net.centers.copy()
    centers[2, 1] = centers[1, 1]
    with pytest.raises(DegenerateEdge):
        conical_residual(ConicalNet(net.grid, centers), (1, 1))


def test_circle_pattern_face_center_seed():
    net = lattice(4, 4)
    pat = circle_pattern_from_conical(net, (1, 1), (1.5, 1.5))
    assert np.allclose(pat.radii, S2 / 2)
    for f in net.grid.faces():
        assert np.allclose(pat.points[f[0], f[1]], [f[0] + 0.5, f[1] + 0.5])
    assert np.allclose(pat.conical().centers, net.centers)
    assert circle_pattern_residual(pat) < 1e-12


def test_circle_pattern_vertex_seed_parity_radii():
    net = lattice(4, 4)
    pat = circle_pattern_from_conical(net, (1, 1), (1.0, 1.0))
    for i in range(4):
        for j in range(4):
            if i % 2 == 1 and j % 2 == 1:
                want = 0.0
            elif i % 2 == 0 and j % 2 == 0:
                want = S2
            else:
                want = 1.0
            assert abs(pat.radii[i, j] - want) < 1e-12, (i, j)
    assert circle_pattern_residual(pat) < 1e-12


def test_circle_pattern_rejects_bent_net():
    net = lattice(3, 3)
    centers = net.centers.copy()
    centers[1, 1] += np.array([0.05, -0.02])
    with pytest.raises(NotConical):
        circle_pattern_from_conical(ConicalNet(net.grid, centers), (0, 0), (0.5, 0.5))


def test_cycle_pattern_diagonal_seed():
    net = lattice(4, 4)
    n0 = np.array([1.0, -1.0]) / S2
    pat = cycle_pattern_from_conical(net, (0, 0), n0, 0.0)
    for i in range(4):
        for j in range(4):
            if (i + j) % 2 == 0:
                want = 0.0
            else:
                want = S2 / 2 if i % 2 == 1 else -S2 / 2
            assert abs(pat.radii[i, j] - want) < 1e-12, (i, j)
    assert cycle_pattern_residual(pat) < 1e-12
    assert np.allclose(pat.conical().centers, net.centers)


def test_cycle_pattern_edge_line_seed():
    net = lattice(4, 4)
    pat = cycle_pattern_from_conical(net, (0, 0), np.array([0.0, 1.0]), 0.0)
    for i in range(4):
        for j in range(4):
            want = 0.0 if j % 2 == 0 else 1.0
            assert abs(pat.radii[i, j] - want) < 1e-12
    # face lines stay horizontal, flipping orientation row by row
    for f in net.grid.faces():
        n = pat.line_normal[f[0], f[1]]
        assert abs(abs(n[1]) - 1.0) < 1e-12
        assert n[1] == pytest.approx(1.0 if f[1] % 2 == 0 else -1.0)
    assert cycle_pattern_residual(pat) < 1e-12


def grid_packing_pattern(w, h):
    """Plane shadow of the standard touching-sphere configuration."""
    g = QuadGrid(w, h)
    ii, jj = np.meshgrid(np.arange(w), np.arange(h), indexing="ij")
    centers = np.stack([ii, jj], axis=-1).astype(float)
    radii = np.where((ii + jj) % 2 == 0, np.where(ii % 2 == 0, 0.0, S2), 1.0)
    pts = np.zeros((w - 1, h - 1, 2))
    for f in g.faces():
        b0, b1 = g.black_diagonal(f)
        base = b0 if b0[0] % 2 == 0 else b1
        pts[f[0], f[1]] = base
    return CirclePattern(g, centers, radii, pts)


def test_packing_residual_grid_fixture_zero():
    pat = grid_packing_pattern(4, 4)
    assert circle_pattern_residual(pat) < 1e-12
    assert is_circle_packing_residual(pat) < 1e-12


def test_packing_residual_accepts_internal_tangency():
    g = QuadGrid(2, 2)
    centers = np.array([[[0.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [1.0, 1.0]]])
    radii = np.array([[2.0, 0.3], [0.4, 2.0 - S2]])
    pts = np.zeros((1, 1, 2))
    pat = CirclePattern(g, centers, radii, pts)
    assert is_circle_packing_residual(pat) < 1e-12


def test_packing_residual_generic_positive():
    pat = grid_packing_pattern(4, 4)
    radii = pat.radii.copy()
    radii[1, 1] += 0.25
    worse = CirclePattern(pat.grid, pat.centers, radii, pat.points)
    assert is_circle_packing_residual(worse) == pytest.approx(0.25)
