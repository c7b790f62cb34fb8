"""Planar conical nets and the patterns they generate.

A net of circle centers is conical when, around every interior vertex, the
composition of reflections across the four incident edge lines is the
identity.  That flatness lets a single seed (a point, or an oriented line)
propagate across the dual graph by edge reflections, producing a circle
pattern (circles at vertices, one point per face lying on all four incident
circles) or a cycle pattern (signed circles at vertices, one oriented line
per face in oriented contact with all four).
"""
from __future__ import annotations

import numpy as np

from .errors import DegenerateEdge, NotConical
from .grid import QuadGrid
from .lorentz import DEFAULT_EPS
from .nets import CirclePattern, ConicalNet, CyclePattern


def _edge_reflection(a, b, eps):
    """Affine reflection of the plane across the line through a and b."""
    a = np.asarray(a, float)
    u = np.asarray(b, float) - a
    n2 = float(u @ u)
    if n2 <= eps * eps:
        raise DegenerateEdge(f"centers {a} and {b} coincide")
    h = 2.0 * np.outer(u, u) / n2 - np.eye(2)
    return h, a - h @ a  # x -> h @ x + t


def conical_residual(net: ConicalNet, v, eps: float = DEFAULT_EPS) -> float:
    """Deviation of the four-reflection holonomy around v from the identity.

    Returns the operator norm of (linear part - identity) plus the drift of
    the vertex center under the composition.
    """
    net.grid.check_vertex(v)
    m = net.centers[v[0], v[1]]
    lin = np.eye(2)
    off = np.zeros(2)
    for nb in net.grid.star(v):
        h, t = _edge_reflection(m, net.centers[nb[0], nb[1]], eps)
        lin = h @ lin
        off = h @ off + t
    drift = lin @ m + off - m
    gap = np.linalg.svd(lin - np.eye(2), compute_uv=False)[0]
    return float(gap + np.linalg.norm(drift))


def _propagate(net: ConicalNet, f0, state, reflect, distance, eps):
    """Push a seed state over the dual spanning tree by edge reflections.

    reflect(state, h, t) applies one affine reflection; distance measures the
    mismatch of two states.  Returns the face dict; raises NotConical when a
    non-tree dual edge disagrees beyond tolerance.
    """
    grid = net.grid
    order, parent = grid.dual_tree(f0)
    values = {f0: state}
    for f in order[1:]:
        g = parent[f]
        v1, v2 = grid.primal_edge(g, f)
        h, t = _edge_reflection(
            net.centers[v1[0], v1[1]], net.centers[v2[0], v2[1]], eps
        )
        values[f] = reflect(values[g], h, t)
    tol = eps * max(net.scale(), 1.0) * 1e3
    worst = 0.0
    for f in grid.faces():
        for g in grid.adjacent_faces(f):
            if parent.get(g) == f or parent.get(f) == g:
                continue
            v1, v2 = grid.primal_edge(f, g)
            h, t = _edge_reflection(
                net.centers[v1[0], v1[1]], net.centers[v2[0], v2[1]], eps
            )
            worst = max(worst, distance(reflect(values[f], h, t), values[g]))
    if worst > tol:
        raise NotConical(f"holonomy discrepancy {worst:.3e} exceeds {tol:.3e}")
    return values


def circle_pattern_from_conical(
    net: ConicalNet, f0, p0, eps: float = DEFAULT_EPS
) -> CirclePattern:
    """Spread the face point p0 over all faces; radii from incident distances."""
    grid = net.grid
    grid.check_face(f0)
    points = _propagate(
        net,
        f0,
        np.asarray(p0, float),
        lambda p, h, t: h @ p + t,
        lambda p, q: float(np.linalg.norm(p - q)),
        eps,
    )
    pts = np.zeros(grid.face_shape + (2,))
    for f, p in points.items():
        pts[f[0], f[1]] = p
    radii = np.zeros(grid.vertex_shape)
    for v in grid.vertices():
        ds = [
            np.linalg.norm(points[f] - net.centers[v[0], v[1]])
            for f in grid.incident_faces(v)
        ]
        radii[v[0], v[1]] = float(np.mean(ds))
    return CirclePattern(grid, net.centers.copy(), radii, pts)


def cycle_pattern_from_conical(
    net: ConicalNet, f0, normal0, offset0, eps: float = DEFAULT_EPS
) -> CyclePattern:
    """Spread the oriented seed line over all faces; signed radii from contact.

    The seed is the line {x : normal0 . x = offset0} with unit normal0.
    """
    grid = net.grid
    grid.check_face(f0)
    n0 = np.asarray(normal0, float)
    if abs(n0 @ n0 - 1.0) > 1e-8:
        raise DegenerateEdge("seed line normal must be unit")

    def reflect(line, h, t):
        n, d = line
        n2 = h @ n
        return n2, float(n2 @ (h @ (d * n) + t))

    def distance(a, b):
        return float(np.linalg.norm(a[0] - b[0]) + abs(a[1] - b[1]))

    lines = _propagate(net, f0, (n0, float(offset0)), reflect, distance, eps)
    normals = np.zeros(grid.face_shape + (2,))
    offsets = np.zeros(grid.face_shape)
    for f, (n, d) in lines.items():
        normals[f[0], f[1]] = n
        offsets[f[0], f[1]] = d
    radii = np.zeros(grid.vertex_shape)
    for v in grid.vertices():
        ds = [
            lines[f][0] @ net.centers[v[0], v[1]] - lines[f][1]
            for f in grid.incident_faces(v)
        ]
        radii[v[0], v[1]] = float(np.mean(ds))
    return CyclePattern(grid, net.centers.copy(), radii, normals, offsets)


def circle_pattern_residual(p: CirclePattern) -> float:
    """Worst violation of 'the face point lies on each incident circle'."""
    worst = 0.0
    for f in p.grid.faces():
        pt = p.points[f[0], f[1]]
        for v in p.grid.face_vertices(f):
            d = np.linalg.norm(pt - p.centers[v[0], v[1]])
            worst = max(worst, abs(d - p.radii[v[0], v[1]]))
    return float(worst)


def cycle_pattern_residual(p: CyclePattern) -> float:
    """Worst violation of oriented contact between face lines and cycles."""
    worst = 0.0
    for f in p.grid.faces():
        n = p.line_normal[f[0], f[1]]
        d = p.line_offset[f[0], f[1]]
        for v in p.grid.face_vertices(f):
            s = n @ p.centers[v[0], v[1]] - d
            worst = max(worst, abs(s - p.radii[v[0], v[1]]))
    return float(worst)


def is_circle_packing_residual(p: CirclePattern) -> float:
    """Tangency defect of the two black circles across each face diagonal.

    Tangency allows either mutual orientation, so each pair contributes the
    nearer of the external and internal conditions.
    """
    worst = 0.0
    for f in p.grid.faces():
        b0, b1 = p.grid.black_diagonal(f)
        d = np.linalg.norm(p.centers[b0[0], b0[1]] - p.centers[b1[0], b1[1]])
        r0 = p.radii[b0[0], b0[1]]
        r1 = p.radii[b1[0], b1[1]]
        worst = max(worst, min(abs(d - (r0 + r1)), abs(d - abs(r0 - r1))))
    return float(worst)
