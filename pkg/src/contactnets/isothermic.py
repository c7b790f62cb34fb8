"""Coplanar white stars, the sphere/circle net conversion, and duals.

A null congruence whose white centers are coplanar around every black
vertex supports extra structure: a common point pair per white star, a
touching-coins circle per black vertex, a conversion to a net of spheres
and circles, and Christoffel/Koenigs dualization.  Plane fits use the
Euclidean SVD only to locate the affine plane; every measurement inside a
plane is taken with the Lorentz form.
"""
from __future__ import annotations

from collections import deque

import numpy as np

from .errors import (
    ClosureFailure,
    ContactLost,
    DegenerateQuad,
    DegenerateStar,
    InconsistentChoice,
    NonSpacelikeEdge,
    NoRealIntersection,
    ZeroLengthEdge,
)
from .grid import QuadGrid
from .lorentz import (
    DEFAULT_EPS,
    OrientedSphere,
    SpacelikeCircle,
    contact_point,
    lorentz_dot,
    lorentz_sq,
    mobius_dot,
    mobius_lift,
    point_from_mobius,
)
from .nets import CombinedNet, ContactCongruence, SIsothermicNet
from .transforms import _rebuild

_G5 = np.array([1.0, 1.0, 1.0, -1.0, -1.0])
_J3 = np.array([1.0, 1.0, -1.0])


def _paired_roots(a, b, c):
    """Roots of a t^2 + 2 b t + c as projective pairs (alpha, beta).

    Subtraction-free pairing: returns ((r1, a), (c, r1)) with
    r1 = -b - sign(b) sqrt(D), stable when one root is tiny.
    """
    disc = b * b - a * c
    root = np.sqrt(max(disc, 0.0))
    r1 = -b - root if b >= 0 else -b + root
    return disc, (r1, a), (c, r1)


# -- detection ----------------------------------------------------------------

def isothermic_residuals(cc: ContactCongruence, eps: float = DEFAULT_EPS):
    """Planarity of white centers around each interior black vertex.

    Returns two vertex-shaped arrays, NaN off the domain: the plane-fit
    residual of the four neighboring white centers, and the spacelike-plane
    margin of the fitted plane (positive when the plane normal is timelike,
    which makes the plane itself spacelike).
    """
    g = cc.grid
    plane_res = np.full(g.vertex_shape, np.nan)
    margin = np.full(g.vertex_shape, np.nan)
    scale = max(cc.scale(), 1.0)
    for v in g.interior_vertices():
        if not g.is_black(v):
            continue
        pts = np.array([cc.centers[u[0], u[1]] for u in g.star(v)])
        mu = pts.mean(axis=0)
        _, sv, vt = np.linalg.svd(pts - mu)
        if sv[1] <= 1e-10 * scale:
            raise DegenerateStar("white centers around a black vertex are collinear")
        m = vt[2]
        plane_res[v[0], v[1]] = float(np.max(np.abs((pts - mu) @ m)))
        margin[v[0], v[1]] = m[2] * m[2] - m[0] * m[0] - m[1] * m[1]
    return plane_res, margin


def two_point_intersection(spheres, eps: float = DEFAULT_EPS):
    """Common point pair of four spheres whose lifts span only a 3-space.

    The polar line of the span is cut with the quadric of point lifts; the
    two intersections come back as affine points.  A tangent cut returns
    the same point twice.
    """
    if len(spheres) != 4:
        raise DegenerateStar("expected exactly four spheres")
    lifts = np.array([mobius_lift(s) for s in spheres])
    _, sv, vt = np.linalg.svd(lifts * _G5)
    if sv[2] <= 1e-10 * sv[0]:
        raise DegenerateStar("sphere lifts span less than a 3-space")
    u, v = vt[3], vt[4]
    qa = mobius_dot(u, u)
    qb = mobius_dot(u, v)
    qc = mobius_dot(v, v)
    norm = max(abs(qa), abs(qb), abs(qc))
    if norm <= 1e-13:
        raise DegenerateStar("the whole polar line lies on the quadric")
    disc, (a1, b1), (a2, b2) = _paired_roots(qa, qb, qc)
    if disc < -1e-10 * norm * norm:
        raise NoRealIntersection("polar line misses the quadric")
    y1 = a1 * u + b1 * v
    y2 = a2 * u + b2 * v
    # a vanishing double root leaves one combination empty; reuse the other
    if float(np.hypot(a1, b1)) <= 1e-12 * norm:
        y1 = y2
    if float(np.hypot(a2, b2)) <= 1e-12 * norm:
        y2 = y1
    return point_from_mobius(y1, eps), point_from_mobius(y2, eps)


def _plane_basis(pts, eps):
    """Affine plane through points: (mean, t1, t2, unit normal, thickness)."""
    mu = pts.mean(axis=0)
    _, sv, vt = np.linalg.svd(pts - mu)
    scale = float(np.max(np.abs(pts))) + 1.0
    if sv[1] <= 1e-10 * scale:
        raise DegenerateStar("points are collinear, no plane")
    return mu, vt[0], vt[1], vt[2], float(sv[2])


def _inplane_circle(coords, gram):
    """Lorentz circumcenter of the first three 2d points; (center, radius sq)."""
    p1, p2, p3 = coords[:3]
    m = 2.0 * np.array([(p2 - p1) @ gram, (p3 - p1) @ gram])
    rhs = np.array(
        [p2 @ gram @ p2 - p1 @ gram @ p1, p3 @ gram @ p3 - p1 @ gram @ p1]
    )
    det = float(np.linalg.det(m))
    scale = float(np.max(np.abs(m))) + 1.0
    if abs(det) <= 1e-12 * scale * scale:
        raise DegenerateStar("points nearly collinear in their plane")
    q = np.linalg.solve(m, rhs)
    r2 = float((p1 - q) @ gram @ (p1 - q))
    return q, r2


def contact_circle(spheres, eps: float = DEFAULT_EPS):
    """Circle through the four pairwise contact points of a touching cycle.

    Fits the circle through the first three contact points, in the Lorentz
    metric of their plane, and returns ``(circle, residual)``; the residual
    combines the fourth point's radial defect with the plane thickness.
    The plane must be spacelike.  The normal is unit timelike with positive
    third component.
    """
    pts = np.array(
        [contact_point(spheres[i], spheres[(i + 1) % 4], eps) for i in range(4)]
    )
    mu, t1, t2, m, flat = _plane_basis(pts, eps)
    gram = np.array(
        [
            [lorentz_dot(t1, t1), lorentz_dot(t1, t2)],
            [lorentz_dot(t1, t2), lorentz_dot(t2, t2)],
        ]
    )
    coords = (pts - mu) @ np.stack([t1, t2], axis=1)
    q2, r2 = _inplane_circle(coords, gram)
    if r2 <= 0:
        raise DegenerateStar("contact circle is not spacelike")
    radius = float(np.sqrt(r2))
    center = mu + q2[0] * t1 + q2[1] * t2
    d4 = coords[3] - q2
    radial = abs(float(np.sqrt(max(d4 @ gram @ d4, 0.0))) - radius)
    nn = _J3 * m
    s = lorentz_sq(nn)
    if s >= -eps:
        raise DegenerateStar("contact points span a non-spacelike plane")
    n = nn / np.sqrt(-s)
    if n[2] < 0:
        n = -n
    circle = SpacelikeCircle(center, radius, n, lorentz_dot(n, center))
    return circle, radial + flat


# -- conversion ---------------------------------------------------------------

def to_s_isothermic(cc: ContactCongruence, eps: float = DEFAULT_EPS) -> SIsothermicNet:
    """Spheres-and-circles net of an isothermic congruence.

    White spheres are copied, black vertices get their contact circle,
    faces get the touching point of their white pair.  Full stars are
    needed at every black vertex, so the result lives on the grid shrunk
    by its outermost ring.
    """
    g = cc.grid
    sub = QuadGrid(g.width - 2, g.height - 2)
    wc = np.full(sub.vertex_shape + (3,), np.nan)
    wr = np.full(sub.vertex_shape, np.nan)
    ccen = np.full(sub.vertex_shape + (3,), np.nan)
    crad = np.full(sub.vertex_shape, np.nan)
    cnorm = np.full(sub.vertex_shape + (3,), np.nan)
    coff = np.full(sub.vertex_shape, np.nan)
    contacts = np.zeros(sub.face_shape + (3,))
    scale = max(cc.scale(), 1.0)
    tol = max(1e3 * eps, 1e-9) * scale
    for v in sub.vertices():
        old = (v[0] + 1, v[1] + 1)
        if sub.is_black(v):
            ring = [cc.sphere_at(u) for u in g.star(old)]
            circle, res = contact_circle(ring, eps)
            if res > tol:
                raise ContactLost(f"contact points not concyclic: {res:.2e}")
            ccen[v[0], v[1]] = circle.center
            crad[v[0], v[1]] = circle.radius
            cnorm[v[0], v[1]] = circle.normal
            coff[v[0], v[1]] = circle.offset
        else:
            wc[v[0], v[1]] = cc.centers[old[0], old[1]]
            wr[v[0], v[1]] = cc.rho[old[0], old[1]]
    for f in sub.faces():
        w1, w2 = sub.white_diagonal(f)
        s1 = cc.sphere_at((w1[0] + 1, w1[1] + 1))
        s2 = cc.sphere_at((w2[0] + 1, w2[1] + 1))
        contacts[f[0], f[1]] = contact_point(s1, s2, eps)
    net = SIsothermicNet(sub, wc, wr, ccen, crad, cnorm, coff, contacts)
    # the face contact points must land on both incident circles as well
    worst = 0.0
    for f in sub.faces():
        p = contacts[f[0], f[1]]
        for b in sub.black_diagonal(f):
            c = net.circle_at(b)
            d = p - c.center
            planar = abs(lorentz_dot(c.normal, p) - c.offset)
            radial = abs(
                np.sqrt(max(lorentz_sq(d) + lorentz_dot(c.normal, d) ** 2, 0.0))
                - c.radius
            )
            worst = max(worst, planar + radial)
    if worst > tol:
        raise ContactLost(f"face contact points miss the circles: {worst:.2e}")
    return net


def _isotropic_plane_directions(n, eps):
    """Both null directions Lorentz-orthogonal to ``n``, unit third component.

    Returned sorted by (first, second) component, so the pair order is a
    stable convention.
    """
    nn = lorentz_sq(n)
    if abs(nn) <= eps * float(np.dot(n, n)):
        raise InconsistentChoice("tangent plane normal is null")
    basis = []
    for cand in np.eye(3):
        d = cand - (lorentz_dot(cand, n) / nn) * n
        for b in basis:
            d = d - (np.dot(d, b) / np.dot(b, b)) * b
        if float(np.dot(d, d)) > 1e-12:
            basis.append(d)
        if len(basis) == 2:
            break
    if len(basis) < 2:
        raise InconsistentChoice("no plane basis orthogonal to the normal")
    t1, t2 = basis
    a = lorentz_sq(t1)
    b = lorentz_dot(t1, t2)
    c = lorentz_sq(t2)
    norm = max(abs(a), abs(b), abs(c), 1e-300)
    disc, (a1, b1), (a2, b2) = _paired_roots(a, b, c)
    if disc <= 1e-12 * norm * norm:
        raise InconsistentChoice("tangent plane has fewer than two isotropic directions")
    out = []
    for d in (a1 * t1 + b1 * t2, a2 * t1 + b2 * t2):
        m = float(np.max(np.abs(d)))
        if m <= 1e-12 * norm:
            raise InconsistentChoice("isotropic direction collapsed")
        if abs(d[2]) <= 1e-9 * m:
            raise InconsistentChoice("isotropic direction parallel to the base plane")
        out.append(d / d[2])
    out.sort(key=lambda d: (d[0], d[1]))
    return out


def _line_point_gap(base, d, p):
    u = d / np.linalg.norm(d)
    w = p - base
    return float(np.linalg.norm(w - np.dot(w, u) * u))


def from_s_isothermic(
    net: SIsothermicNet, side: int = 1, eps: float = DEFAULT_EPS
) -> ContactCongruence:
    """Rebuild a congruence from a spheres-and-circles net.

    Each face line must pass through the face's contact point along one of
    the two isotropic directions of the white tangent plane there; ``side``
    picks the branch at the base face (+1 takes the lexicographically
    larger direction), after which every other face is forced.  Null
    sphere centers are the points where face lines cross circle axes.
    """
    g = net.grid
    scale = max(net.scale(), 1.0)
    tol = max(1e3 * eps, 1e-9) * scale
    order, parent = g.dual_tree((0, 0))
    black_centers = {}
    for f in order:
        x = net.contacts[f[0], f[1]]
        if parent[f] is None:
            w1, _ = g.white_diagonal(f)
            d = _isotropic_plane_directions(x - net.sphere_at(w1).center, eps)[
                1 if side > 0 else 0
            ]
        else:
            known = [b for b in g.black_diagonal(f) if b in black_centers]
            if not known:
                raise InconsistentChoice("face has no propagated null center")
            d = black_centers[known[0]] - x
            if float(np.max(np.abs(d))) <= tol:
                raise InconsistentChoice("contact point coincides with a null center")
            if abs(lorentz_sq(d)) > 1e-6 * float(np.dot(d, d)):
                raise InconsistentChoice("propagated face line is not isotropic")
        for b in g.black_diagonal(f):
            circle = net.circle_at(b)
            cands = [
                circle.center + circle.radius * circle.normal,
                circle.center - circle.radius * circle.normal,
            ]
            gaps = [_line_point_gap(x, d, c) for c in cands]
            pick = int(np.argmin(gaps))
            if gaps[pick] > tol:
                raise InconsistentChoice(
                    f"face line misses both poles of a circle axis: {gaps[pick]:.2e}"
                )
            if b in black_centers:
                if float(np.max(np.abs(black_centers[b] - cands[pick]))) > tol:
                    raise InconsistentChoice("cycle closes on the wrong axis pole")
            else:
                black_centers[b] = cands[pick]
    spheres = {}
    for v in g.vertices():
        if g.is_black(v):
            spheres[v] = OrientedSphere(black_centers[v], 0.0)
        else:
            spheres[v] = net.sphere_at(v)
    return _rebuild(g, spheres, eps)


# -- harmonic quads and duals -------------------------------------------------

def harmonic_quad_residual(pts, eps: float = DEFAULT_EPS):
    """Concyclicity defect and opposite-side product defect of a quad.

    All four sides must be spacelike; side lengths are Lorentz lengths.
    Returns ``(concyclicity, |l1 l3 - l2 l4|)``.
    """
    pts = np.asarray(pts, dtype=float)
    if pts.shape != (4, 3):
        raise DegenerateQuad("expected four points in Lorentz space")
    scale = float(np.max(np.abs(pts))) + 1.0
    lens = []
    for i in range(4):
        sq = lorentz_sq(pts[(i + 1) % 4] - pts[i])
        if sq <= eps * scale * scale:
            raise NonSpacelikeEdge(f"side {i} is not spacelike")
        lens.append(np.sqrt(sq))
    product = abs(lens[0] * lens[2] - lens[1] * lens[3])
    mu, t1, t2, _, flat = _plane_basis(pts, eps)
    gram = np.array(
        [
            [lorentz_dot(t1, t1), lorentz_dot(t1, t2)],
            [lorentz_dot(t1, t2), lorentz_dot(t2, t2)],
        ]
    )
    coords = (pts - mu) @ np.stack([t1, t2], axis=1)
    q2, r2 = _inplane_circle(coords, gram)
    if r2 <= 0:
        raise NonSpacelikeEdge("circumcircle of the quad is not spacelike")
    d4 = coords[3] - q2
    circ = abs(float(np.sqrt(max(d4 @ gram @ d4, 0.0))) - float(np.sqrt(r2)))
    return circ + flat, product


def _combined_site(node):
    kind, (i, j) = node
    if kind == "v":
        return (i + j, j - i)
    return (i + j + 1, j - i)


def _combined_adjacency(grid):
    adj = {}
    for v in grid.vertices():
        adj[("v", v)] = []
    for f in grid.faces():
        adj[("f", f)] = []
    for f in grid.faces():
        fn = ("f", f)
        for v in grid.face_vertices(f):
            vn = ("v", v)
            adj[fn].append(vn)
            adj[vn].append(fn)
    for nbrs in adj.values():
        nbrs.sort()
    return adj


def _edge_sign(a, b):
    """+1 on horizontal combined-lattice edges, -1 on vertical ones."""
    sa, sb = _combined_site(a), _combined_site(b)
    if abs(sa[0] - sb[0]) == 1 and sa[1] == sb[1]:
        return 1.0
    if abs(sa[1] - sb[1]) == 1 and sa[0] == sb[0]:
        return -1.0
    raise InconsistentChoice("nodes are not adjacent on the combined lattice")


def _value(net: CombinedNet, node):
    kind, (i, j) = node
    if kind == "v":
        return net.vertex_values[i, j]
    return net.face_values[i, j]


def _integrate_combined(grid, diff):
    """Sum an edge map over a breadth-first tree of the combined lattice.

    ``diff(a, b)`` is the dual difference from node a to node b; the base
    node, vertex (0, 0), is pinned at the origin.
    """
    adj = _combined_adjacency(grid)
    base = ("v", (0, 0))
    out = {base: np.zeros(3)}
    queue = deque([base])
    while queue:
        node = queue.popleft()
        for nb in adj[node]:
            if nb in out:
                continue
            out[nb] = out[node] + diff(node, nb)
            queue.append(nb)
    return out


def _closure_defect(net: CombinedNet, diff) -> float:
    worst = 0.0
    for v, fl, v2, fr in net.quads():
        cyc = [("v", v), ("f", fl), ("v", v2), ("f", fr)]
        total = np.zeros(3)
        for i in range(4):
            total += diff(cyc[i], cyc[(i + 1) % 4])
        worst = max(worst, float(np.max(np.abs(total))))
    return worst


def christoffel_dual(net: CombinedNet, eps: float = DEFAULT_EPS):
    """Edgewise-inverted companion of a harmonic combined net.

    Every edge vector is replaced by itself divided by its Lorentz square,
    with positive sign on horizontal combined-lattice edges and negative on
    vertical ones.  Returns the integrated net, pinned to the origin at
    vertex (0, 0), together with the worst per-quad closure defect of the
    dual differential.
    """
    g = net.grid
    scale = max(net.scale(), 1.0)

    def diff(a, b):
        d = _value(net, b) - _value(net, a)
        sq = lorentz_sq(d)
        if abs(sq) <= (eps * scale) ** 2:
            raise ZeroLengthEdge("combined-lattice edge with null Lorentz length")
        return _edge_sign(a, b) * d / sq

    dual = _integrate_combined(g, diff)
    vv = np.zeros(g.vertex_shape + (3,))
    fv = np.zeros(g.face_shape + (3,))
    for v in g.vertices():
        vv[v[0], v[1]] = dual[("v", v)]
    for f in g.faces():
        fv[f[0], f[1]] = dual[("f", f)]
    return CombinedNet(g, vv, fv), _closure_defect(net, diff)


def combined_center_net(net: SIsothermicNet) -> CombinedNet:
    """Central net of a spheres-and-circles net on the combined lattice.

    Sphere centers at whites, circle centers at blacks, contact points at
    faces.  This is the net whose quads are harmonic when the source is
    isothermic.
    """
    g = net.grid
    vv = np.where(
        g.black_mask()[:, :, None], net.circle_centers, net.white_centers
    )
    return CombinedNet(g, vv, np.array(net.contacts))


def christoffel_dual_congruence(
    cc: ContactCongruence, eps: float = DEFAULT_EPS
) -> ContactCongruence:
    """Dual isothermic congruence, by integrating the inverted differential.

    The central net of the spheres-and-circles form is integrated with
    combined-lattice edges divided by the squared sphere radius at whites
    and the squared contact-circle radius at blacks, under the sign rule of
    :func:`christoffel_dual`.  Dual white signed radii are the reciprocal
    originals, dual circles keep their plane directions with reciprocal
    radii, and the dual congruence is rebuilt with its base face line
    parallel to the input's.  The result lives on the grid shrunk by one
    ring, pinned so the first black vertex's circle center is the origin.
    """
    net = to_s_isothermic(cc, eps)
    g = net.grid
    comb = combined_center_net(net)
    scale = max(comb.scale(), 1.0)

    def diff(a, b):
        vert = a[1] if a[0] == "v" else b[1]
        if g.is_black(vert):
            r = float(net.circle_radii[vert[0], vert[1]])
        else:
            r = abs(float(net.white_rho[vert[0], vert[1]]))
        if r <= eps * scale:
            raise ZeroLengthEdge("vanishing radius in the dual differential")
        d = _value(comb, b) - _value(comb, a)
        return _edge_sign(a, b) * d / (r * r)

    dual = _integrate_combined(g, diff)
    dual_scale = max(float(np.max(np.abs(np.array(list(dual.values()))))), 1.0)
    tol = max(1e3 * eps, 1e-8) * dual_scale
    closure = _closure_defect(comb, diff)
    if closure > tol:
        raise ClosureFailure(f"dual differential does not close: {closure:.2e}")
    # independent check of white steps: the reciprocal-radius touching
    # formula, with the step length measured on the original centers
    worst = 0.0
    for f in g.faces():
        w1, w2 = g.white_diagonal(f)
        r1 = float(net.white_rho[w1[0], w1[1]])
        r2 = float(net.white_rho[w2[0], w2[1]])
        d = net.white_centers[w2[0], w2[1]] - net.white_centers[w1[0], w1[1]]
        unit = d / np.sqrt(max(lorentz_sq(d), 1e-300))
        sgn = 1.0 if (w2[0] - w1[0]) == (w2[1] - w1[1]) else -1.0
        direct = sgn * (1.0 / r1 - 1.0 / r2) * np.sign(r1 - r2) * unit
        got = dual[("v", w2)] - dual[("v", w1)]
        worst = max(worst, float(np.max(np.abs(got - direct))))
    if worst > tol:
        raise ClosureFailure(
            f"white steps disagree with the direct formula: {worst:.2e}"
        )
    wc = np.full(g.vertex_shape + (3,), np.nan)
    wr = np.full(g.vertex_shape, np.nan)
    ccen = np.full(g.vertex_shape + (3,), np.nan)
    contacts = np.zeros(g.face_shape + (3,))
    for v in g.vertices():
        if g.is_black(v):
            ccen[v[0], v[1]] = dual[("v", v)]
        else:
            wc[v[0], v[1]] = dual[("v", v)]
            wr[v[0], v[1]] = 1.0 / float(net.white_rho[v[0], v[1]])
    for f in g.faces():
        contacts[f[0], f[1]] = dual[("f", f)]
    dual_net = SIsothermicNet(
        g,
        wc,
        wr,
        ccen,
        1.0 / net.circle_radii,
        np.array(net.circle_normals),
        np.einsum("ijk,ijk->ij", np.asarray(net.circle_normals), ccen * _J3),
        contacts,
    )
    # branch convention: the base face line of the dual is parallel to the
    # input's base face line
    f0 = (0, 0)
    b0 = g.black_diagonal(f0)[0]
    axis = cc.centers[b0[0] + 1, b0[1] + 1] - net.contacts[f0[0], f0[1]]
    w1, _ = g.white_diagonal(f0)
    dirs = _isotropic_plane_directions(
        contacts[f0[0], f0[1]] - wc[w1[0], w1[1]], eps
    )
    gaps = [float(np.max(np.abs(d - axis / axis[2]))) for d in dirs]
    return from_s_isothermic(dual_net, 1 if gaps[1] < gaps[0] else -1, eps)


def koenigs_dual_quad(pts, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Quad with parallel sides whose diagonals swap with the input's.

    Determined up to scale and translation; the returned quad starts at the
    origin and its first side is the input's first side scaled to unit
    Euclidean length with positive coefficient.
    """
    pts = np.asarray(pts, dtype=float)
    if pts.shape != (4, 3):
        raise DegenerateQuad("expected four points")
    e = [pts[(i + 1) % 4] - pts[i] for i in range(4)]
    scale = float(np.max(np.abs(np.array(e)))) + 1e-300
    if min(float(np.linalg.norm(x)) for x in e) <= 1e-12 * scale:
        raise DegenerateQuad("coinciding corners")
    d1 = pts[3] - pts[1]
    d2 = pts[2] - pts[0]
    z = np.zeros(3)
    m = np.concatenate(
        [
            np.stack(e, axis=1),
            np.stack([np.cross(e[0], d1), np.cross(e[1], d1), z, z], axis=1),
            np.stack([z, np.cross(e[1], d2), np.cross(e[2], d2), z], axis=1),
        ],
        axis=0,
    )
    _, sv, vt = np.linalg.svd(m)
    if sv[2] <= 1e-10 * sv[0]:
        raise DegenerateQuad("dual system is rank deficient")
    if sv[3] > 1e-8 * sv[0]:
        raise DegenerateQuad("quad admits no parallel-sided dual")
    x = vt[3]
    if x[0] < 0:
        x = -x
    if abs(x[0]) <= 1e-10:
        raise DegenerateQuad("first dual side collapses")
    out = np.zeros((4, 3))
    out[1] = x[0] * e[0]
    out[2] = out[1] + x[1] * e[1]
    out[3] = out[2] + x[2] * e[2]
    out /= float(np.linalg.norm(out[1]))
    return out
