"""Lifting planar patterns to sphere congruences and projecting back.

The lift walks the dual spanning tree: the seed isotropic line is reflected
across the vertical planes over the edge lines of the center net, one line
per face; each vertex sphere is then pinned down by its vertical axis and
any incident line.  Projection intersects everything with the base plane.

The center-net route works without verticality: the four sphere centers of
a face span a plane whose Lorentz normal is isotropic and lies inside the
plane; successive face lines meet on the line joining the two shared
centers, which rebuilds a congruence from centers plus one seed line.
"""
from __future__ import annotations

import numpy as np

from .errors import (
    DegenerateFace,
    DegenerateStar,
    InconsistentPropagation,
    InitialLineMismatch,
    NotConical,
    NotIsotropicConjugate,
)
from .grid import QuadGrid
from .lorentz import (
    DEFAULT_EPS,
    OrientedIsoLine,
    OrientedSphere,
    cyclo_lift,
    iso_line_close,
    iso_line_contact_residual,
    lorentz_sq,
    make_iso_line,
    oriented_contact_residual,
    reflect_vertical_line,
    sphere_from_axis_and_line,
)
from .nets import CirclePattern, ConicalNet, ContactCongruence, CycloNet, CyclePattern

_J3 = np.array([1.0, 1.0, -1.0])


def congruence_residuals(cc: ContactCongruence):
    """(worst sphere-line incidence, worst edgewise oriented contact)."""
    grid = cc.grid
    worst_line = 0.0
    for f in grid.faces():
        line = cc.iso_line_at(f)
        for v in grid.face_vertices(f):
            worst_line = max(
                worst_line, iso_line_contact_residual(cc.sphere_at(v), line)
            )
    worst_edge = 0.0
    for v1, v2 in grid.edges():
        worst_edge = max(
            worst_edge,
            abs(oriented_contact_residual(cc.sphere_at(v1), cc.sphere_at(v2))),
        )
    return worst_line, worst_edge


def _lines_by_vertical_reflection(grid, centers2d, f0, line0, eps, scale):
    """Spread line0 over all faces by reflections in vertical edge planes."""
    order, parent = grid.dual_tree(f0)
    lines = {f0: line0}
    for f in order[1:]:
        g = parent[f]
        v1, v2 = grid.primal_edge(g, f)
        a = centers2d[v1[0], v1[1]]
        u = centers2d[v2[0], v2[1]] - a
        lines[f] = reflect_vertical_line(a, u, lines[g])
    tol = max(eps * 1e3, 1e-12) * max(scale, 1.0)
    for f in grid.faces():
        for g in grid.adjacent_faces(f):
            if parent.get(g) == f or parent.get(f) == g:
                continue
            v1, v2 = grid.primal_edge(f, g)
            a = centers2d[v1[0], v1[1]]
            u = centers2d[v2[0], v2[1]] - a
            if not iso_line_close(reflect_vertical_line(a, u, lines[f]), lines[g], tol):
                raise NotConical("line propagation has nonzero holonomy")
    return lines


def _congruence_from_lines(grid, centers2d, lines, eps, scale):
    """Spheres at every vertex axis from the incident face lines."""
    centers = np.zeros(grid.vertex_shape + (3,))
    rho = np.zeros(grid.vertex_shape)
    tol = max(eps * 1e3, 1e-9) * max(scale, 1.0)
    for v in grid.vertices():
        cands = [
            sphere_from_axis_and_line(centers2d[v[0], v[1]], lines[f])
            for f in grid.incident_faces(v)
        ]
        cs = np.array([s.center for s in cands])
        rs = np.array([s.rho for s in cands])
        if np.max(np.ptp(cs, axis=0)) > tol or np.ptp(rs) > tol:
            raise InconsistentPropagation(f"incident lines disagree at vertex {v}")
        centers[v[0], v[1]] = cs.mean(axis=0)
        rho[v[0], v[1]] = rs.mean()
    base = np.zeros(grid.face_shape + (3,))
    dirs = np.zeros(grid.face_shape + (3,))
    ospan = np.zeros(grid.face_shape + (4,))
    for f, line in lines.items():
        base[f[0], f[1]] = line.base
        dirs[f[0], f[1]] = line.dir
        ospan[f[0], f[1]] = line.ospan
    return ContactCongruence(grid, centers, rho, base, dirs, ospan)


def lorentz_lift(
    p: CirclePattern, f0, line0: OrientedIsoLine, eps: float = DEFAULT_EPS
) -> ContactCongruence:
    """Lift a circle pattern to the touching-sphere congruence through line0."""
    grid = p.grid
    grid.check_face(f0)
    scale = p.scale()
    if np.linalg.norm(line0.base_plane_point() - p.points[f0[0], f0[1]]) > 1e-6 * scale:
        raise InitialLineMismatch("seed line misses the seed face point")
    lines = _lines_by_vertical_reflection(grid, p.centers, f0, line0, eps, scale)
    return _congruence_from_lines(grid, p.centers, lines, eps, scale)


def project_circle_pattern(cc: ContactCongruence) -> CirclePattern:
    """Intersect spheres and lines with the base plane."""
    grid = cc.grid
    radii = np.sqrt(cc.rho**2 + cc.centers[:, :, 2] ** 2)
    pts = cc.iso_base[:, :, :2].copy()
    return CirclePattern(grid, cc.centers[:, :, :2].copy(), radii, pts)


def project_cycle_pattern(cc: ContactCongruence) -> CyclePattern:
    """Top views: signed waist circles and oriented line shadows."""
    grid = cc.grid
    normals = np.zeros(grid.face_shape + (2,))
    offsets = np.zeros(grid.face_shape)
    for f in grid.faces():
        line = cc.iso_line_at(f)
        v = np.array([-line.dir[1], line.dir[0]])
        sigma = 1.0 if float(np.dot(line.ospan[:2], v)) >= 0.0 else -1.0
        n = sigma * v
        normals[f[0], f[1]] = n
        offsets[f[0], f[1]] = float(n @ line.base[:2])
    return CyclePattern(
        grid, cc.centers[:, :, :2].copy(), cc.rho.copy(), normals, offsets
    )


def _face_plane(points3, eps):
    """Centroid, Euclidean unit normal and flatness residual of 4 points."""
    mu = points3.mean(axis=0)
    centered = points3 - mu
    _, sv, vt = np.linalg.svd(centered, full_matrices=False)
    if sv[1] <= 1e-10 * (sv[0] + eps):
        raise DegenerateFace("face centers nearly collinear")
    normal = vt[2]
    flat = float(np.max(np.abs(centered @ normal)))
    return mu, normal, flat


def center_net_residual(cc: ContactCongruence, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Per face: (coplanarity of the four centers, isotropy of the normal).

    The second entry is |<n,n>| for the Lorentz normal scaled to unit
    Euclidean length; it vanishes exactly when the face plane carries an
    isotropic direction, the hallmark of center nets of congruences.
    """
    grid = cc.grid
    out = np.zeros(grid.face_shape + (2,))
    for f in grid.faces():
        pts = np.array([cc.centers[v[0], v[1]] for v in grid.face_vertices(f)])
        mu, normal, flat = _face_plane(pts, eps)
        n_lor = _J3 * normal
        out[f[0], f[1]] = (flat, abs(lorentz_sq(n_lor)))
    return out


def _face_iso_direction(points3, eps):
    """The isotropic direction inside an isotropic face plane, dir[2] = 1."""
    mu, normal, flat = _face_plane(points3, eps)
    d = _J3 * normal
    if abs(lorentz_sq(d)) > 1e-6 * float(d @ d):
        raise NotIsotropicConjugate("face plane carries no isotropic direction")
    if abs(d[2]) <= eps:
        raise NotIsotropicConjugate("degenerate vertical face plane")
    d = d / d[2]
    return mu, normal, d, flat


def congruence_from_center_net(
    centers, grid: QuadGrid, f0, line0: OrientedIsoLine, eps: float = DEFAULT_EPS
) -> ContactCongruence:
    """Rebuild a congruence from its sphere centers and one seed line.

    Successive face lines meet on the join of the two centers shared by the
    faces; orientation transfers by matching the signed radius at the shared
    vertex with the larger one.
    """
    centers = np.asarray(centers, float)
    grid.check_face(f0)
    scale = max(float(np.ptp(centers)), 1.0)
    planes = {}
    for f in grid.faces():
        pts = np.array([centers[v[0], v[1]] for v in grid.face_vertices(f)])
        planes[f] = _face_iso_direction(pts, eps)

    mu0, n0, d0, _ = planes[f0]
    if np.max(np.abs(line0.dir - d0)) > 1e-6 or abs((line0.base - mu0) @ n0) > 1e-6 * scale:
        raise InitialLineMismatch("seed line does not lie in the seed face plane")

    def advance(line, f_child, v1, v2):
        m1 = centers[v1[0], v1[1]]
        dm = centers[v2[0], v2[1]] - m1
        a = np.stack([line.dir, -dm], axis=1)
        b = m1 - line.base
        (t, _s), res, _, _ = np.linalg.lstsq(a, b, rcond=None)
        meet = line.base + t * line.dir
        if res.size and res[0] > (1e-6 * scale) ** 2:
            raise InconsistentPropagation("face line misses the shared center join")
        d_child = planes[f_child][2]
        cand = make_iso_line(meet, d_child, side=+1, eps=eps)
        # pick the orientation that keeps the shared spheres' signed radii
        ref_v = v1
        s_par = sphere_from_axis_and_line(centers[ref_v[0], ref_v[1]][:2], line)
        s2_par = sphere_from_axis_and_line(centers[v2[0], v2[1]][:2], line)
        if abs(s2_par.rho) > abs(s_par.rho):
            ref_v, s_par = v2, s2_par
        if abs(s_par.rho) <= eps * scale:
            raise InconsistentPropagation(
                "both shared spheres are null; orientation transfer is ambiguous"
            )
        s_child = sphere_from_axis_and_line(centers[ref_v[0], ref_v[1]][:2], cand)
        if s_child.rho * s_par.rho >= 0:
            return cand
        return make_iso_line(meet, d_child, side=-1, eps=eps)

    order, parent = grid.dual_tree(f0)
    lines = {f0: line0}
    for f in order[1:]:
        g = parent[f]
        v1, v2 = grid.primal_edge(g, f)
        lines[f] = advance(lines[g], f, v1, v2)
    tol = max(eps * 1e3, 1e-9) * scale
    for f in grid.faces():
        for g in grid.adjacent_faces(f):
            if parent.get(g) == f or parent.get(f) == g:
                continue
            v1, v2 = grid.primal_edge(f, g)
            if not iso_line_close(advance(lines[f], g, v1, v2), lines[g], tol):
                raise InconsistentPropagation("non-tree edge disagrees")
    cc = _congruence_from_lines(grid, centers[:, :, :2], lines, eps, scale)
    if np.max(np.abs(cc.centers - centers)) > tol:
        raise InconsistentPropagation("rebuilt centers drift from the input")
    return cc


def cyclographic_lift(cc: ContactCongruence) -> CycloNet:
    """Vertices to split 4-space; face planes from the lines' lifted spans."""
    grid = cc.grid
    pts = np.zeros(grid.vertex_shape + (4,))
    for v in grid.vertices():
        pts[v[0], v[1]] = cyclo_lift(cc.sphere_at(v))
    base = np.zeros(grid.face_shape + (4,))
    s1 = np.zeros(grid.face_shape + (4,))
    s2 = np.zeros(grid.face_shape + (4,))
    for f in grid.faces():
        line = cc.iso_line_at(f)
        base[f[0], f[1]] = np.append(line.base, 0.0)
        s1[f[0], f[1]] = np.append(line.dir, 0.0)
        s2[f[0], f[1]] = line.ospan
    return CycloNet(grid, pts, base, s1, s2)


def _edge_reflection2(a, b, eps):
    a = np.asarray(a, float)
    u = np.asarray(b, float) - a
    n2 = float(u @ u)
    if n2 <= eps * eps:
        raise DegenerateStar("coincident centers")
    h = 2.0 * np.outer(u, u) / n2 - np.eye(2)
    return h, a - h @ a


def origami_map(net: ConicalNet, f0, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Fold the center net flat: each face's frame is the composition of the
    edge reflections along the dual tree; vertices map through any incident
    frame (all incident frames agree when the net is conical)."""
    grid = net.grid
    grid.check_face(f0)
    order, parent = grid.dual_tree(f0)
    frames = {f0: (np.eye(2), np.zeros(2))}
    for f in order[1:]:
        g = parent[f]
        v1, v2 = grid.primal_edge(g, f)
        h, t = _edge_reflection2(
            net.centers[v1[0], v1[1]], net.centers[v2[0], v2[1]], eps
        )
        lin, off = frames[g]
        # new frame applies the shared-edge reflection first
        frames[f] = (lin @ h, lin @ t + off)
    scale = max(net.scale(), 1.0)
    tol = max(eps * 1e3, 1e-9) * scale
    out = np.zeros(grid.vertex_shape + (2,))
    for v in grid.vertices():
        images = []
        for f in grid.incident_faces(v):
            lin, off = frames[f]
            images.append(lin @ net.centers[v[0], v[1]] + off)
        images = np.array(images)
        if np.max(np.ptp(images, axis=0)) > tol:
            raise NotConical(f"incident folds disagree at vertex {v}")
        out[v[0], v[1]] = images.mean(axis=0)
    return out


def origami_equals_cyclift_residual(
    cc: ContactCongruence, f0=(0, 0), eps: float = DEFAULT_EPS
) -> float:
    """How far the fold map sits from the (height, radius) part of the lift.

    The fold plane is identified with the negative-definite block of the
    split 4-space by the plane isometry pinned down at three seed vertices;
    the return value is the worst vertexwise gap under that identification.
    """
    grid = cc.grid
    net = ConicalNet(grid, cc.centers[:, :, :2].copy())
    o = origami_map(net, f0, eps)
    y = np.stack([cc.centers[:, :, 2], cc.rho], axis=-1)
    anchors = [f0, (f0[0] + 1, f0[1]), (f0[0], f0[1] + 1)]
    src = np.array([o[a[0], a[1]] for a in anchors])
    dst = np.array([y[a[0], a[1]] for a in anchors])
    sc, dc = src.mean(axis=0), dst.mean(axis=0)
    h = (dst - dc).T @ (src - sc)
    u, _s, vt = np.linalg.svd(h)
    a = u @ vt  # orthogonal, reflections allowed
    t = dc - a @ sc
    mapped = np.einsum("ij,xyj->xyi", a, o) + t
    return float(np.max(np.linalg.norm(mapped - y, axis=-1)))
