"""Per-star sphere replacement and the black/white sweeps built from it.

A sphere surrounded by four spheres it touches determines a pencil: the
polar line of the span of the four neighbor lifts.  That line meets the
contact quadric in the lift of the center sphere and in exactly one more
point, the replacement sphere.  Doing this at every interior vertex of one
color, then recomputing the face lines, is a sweep.
"""
from __future__ import annotations

import numpy as np

from .errors import ContactElementCase, DegenerateStar, EmptyNet
from .grid import QuadGrid
from .lorentz import (
    DEFAULT_EPS,
    OrientedSphere,
    lie_dot,
    lie_lift,
    sphere_from_lie,
)
from .nets import ContactCongruence
from .transforms import _rebuild

_K6 = np.diag([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])


def miquel_sphere(s: OrientedSphere, neighbors, eps: float = DEFAULT_EPS) -> OrientedSphere:
    """Second sphere touching the same four neighbors as ``s``.

    ``neighbors`` are four spheres each in oriented contact with ``s``.
    Their lifts must span a 3-space; the polar line of that span carries the
    lift of ``s`` and one further quadric point, which is returned.  When
    the polar line is tangent to the quadric, ``s`` is its only quadric
    point and is returned unchanged.
    """
    if len(neighbors) != 4:
        raise DegenerateStar("expected exactly four surrounding spheres")
    ls = lie_lift(s)
    lifts = np.array([lie_lift(t) for t in neighbors])
    a = lifts @ _K6
    _, sv, vt = np.linalg.svd(a)
    if sv[3] <= 1e-10 * sv[0]:
        raise DegenerateStar("surrounding sphere lifts are rank deficient")
    basis = vt[4:6]
    ns = float(np.linalg.norm(ls))
    # the center sphere's lift must already lie on the polar line
    defect = float(np.linalg.norm(ls - (basis @ ls) @ basis))
    if defect > 1e-7 * ns:
        raise DegenerateStar("center sphere does not touch all four neighbors")
    # span direction coordinate-orthogonal to the center lift, for conditioning
    co = basis @ ls
    q = -co[1] * basis[0] + co[0] * basis[1]
    nq = float(np.linalg.norm(q))
    if nq <= 1e-13 * ns:
        raise DegenerateStar("polar line collapsed to a point")
    q /= nq
    qq = float(lie_dot(q, q))
    lq = float(lie_dot(ls, q))
    if abs(qq) <= 1e-10 and abs(lq) <= 1e-10 * ns:
        raise ContactElementCase("polar line lies on the quadric")
    if abs(lq) <= 1e-10 * ns:
        # tangent at the center lift: the second intersection coincides with it
        return OrientedSphere(s.center.copy(), s.rho)
    # projective second intersection; stays finite even as qq -> 0
    second = -qq * ls + 2.0 * lq * q
    return sphere_from_lie(second, eps)


def _circle_meet(c1, r1, c2, r2, eps):
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    d = float(np.linalg.norm(c2 - c1))
    scale = max(d, r1, r2, 1.0)
    if d <= eps * scale:
        raise DegenerateStar("concentric circles do not meet in two points")
    u = (c2 - c1) / d
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h2 = r1 * r1 - a * a
    if h2 < -1e-9 * scale * scale:
        raise DegenerateStar("circles do not intersect")
    h = float(np.sqrt(max(h2, 0.0)))
    perp = np.array([-u[1], u[0]])
    foot = c1 + a * u
    return foot + h * perp, foot - h * perp


def _circumcircle(p1, p2, p3):
    # perpendicular bisector intersection, solved linearly
    m = 2.0 * np.array([p2 - p1, p3 - p1])
    rhs = np.array(
        [np.dot(p2, p2) - np.dot(p1, p1), np.dot(p3, p3) - np.dot(p1, p1)]
    )
    det = float(np.linalg.det(m))
    scale = float(np.max(np.abs(m))) + 1.0
    if abs(det) <= 1e-12 * scale * scale:
        raise DegenerateStar("second intersection points are collinear")
    center = np.linalg.solve(m, rhs)
    return center, float(np.linalg.norm(p1 - center))


def miquel_circle(circle, others, eps: float = DEFAULT_EPS):
    """Second circle of a planar four-circle star.

    ``circle`` is ``(center, radius)``; ``others`` are four circles where
    consecutive ones meet in a point of ``circle``.  Their other pairwise
    intersections are concyclic; returns ``(center, radius, residual)`` of
    the circle through the first three together with the distance defect of
    the fourth.
    """
    c0, r0 = np.asarray(circle[0], dtype=float), float(circle[1])
    cs = [(np.asarray(c, dtype=float), float(r)) for c, r in others]
    if len(cs) != 4:
        raise DegenerateStar("expected exactly four surrounding circles")
    second = []
    for i in range(4):
        (ca, ra), (cb, rb) = cs[i], cs[(i + 1) % 4]
        pa, pb = _circle_meet(ca, ra, cb, rb, eps)
        # keep the intersection that is NOT the concurrency point on `circle`
        da = abs(np.linalg.norm(pa - c0) - r0)
        db = abs(np.linalg.norm(pb - c0) - r0)
        scale = max(r0, 1.0)
        if min(da, db) > 1e-6 * scale:
            raise DegenerateStar("consecutive circles miss the center circle")
        second.append(pa if da > db else pb)
    center, radius = _circumcircle(second[0], second[1], second[2])
    residual = abs(float(np.linalg.norm(second[3] - center)) - radius)
    return center, radius, residual


def _same_sphere(a: OrientedSphere, b: OrientedSphere, tol: float) -> bool:
    return float(np.max(np.abs(a.center - b.center))) <= tol and abs(a.rho - b.rho) <= tol


def _orientation_flip(a: OrientedSphere, b: OrientedSphere, tol: float) -> bool:
    return float(np.max(np.abs(a.center - b.center))) <= tol and abs(a.rho + b.rho) <= tol


def _sweep(cc: ContactCongruence, black: bool, eps: float) -> ContactCongruence:
    g = cc.grid
    w, h = g.width, g.height
    spheres = {v: cc.sphere_at(v) for v in g.vertices()}
    tol = 1e-9 * max(cc.scale(), 1.0)
    changed = False
    updated = dict(spheres)
    for v in g.interior_vertices():
        if g.is_black(v) != black:
            continue
        s = spheres[v]
        ring = [spheres[u] for u in g.star(v)]
        t = miquel_sphere(s, ring, eps)
        if _same_sphere(s, t, tol):
            continue
        if _orientation_flip(s, t, tol):
            # reversing the orientation of one sphere leaves every incidence
            # it projects to unchanged; keep the original representative
            continue
        updated[v] = t
        changed = True
    if not changed:
        return cc
    if w < 4 or h < 4:
        raise EmptyNet("sweeping strips the boundary ring; patch too small")
    # only vertices with a full star were replaced, so drop the outermost ring
    sub = QuadGrid(w - 2, h - 2)
    inner = {(i, j): updated[(i + 1, j + 1)] for (i, j) in sub.vertices()}
    return _rebuild(sub, inner, eps)


def sweep_black(cc: ContactCongruence, eps: float = DEFAULT_EPS) -> ContactCongruence:
    """Replace every interior black sphere by its star partner.

    White spheres keep their values; face lines are recomputed from the new
    sphere quads.  The outermost vertex ring, whose stars are incomplete, is
    dropped.  If no sphere actually moves the input is returned unchanged.
    """
    return _sweep(cc, True, eps)


def sweep_white(cc: ContactCongruence, eps: float = DEFAULT_EPS) -> ContactCongruence:
    """Same as :func:`sweep_black` with the roles of the colors exchanged."""
    return _sweep(cc, False, eps)
