"""Geometry kernel for Lorentz 3-space and its two classical quadric models.

Conventions used throughout the package:

* The ambient space carries the bilinear form  <x,y> = x1*y1 + x2*y2 - x3*y3
  (signature ++-).  The third coordinate is the "vertical" one; the plane
  x3 = 0 is referred to as the base plane.
* An oriented sphere is a pair (center, rho) of a point and a signed radius.
  Its point set is {x : <x-c, x-c> = rho^2}; rho > 0 and rho < 0 describe the
  two orientations of the same set, rho = 0 is the unoriented light cone of
  the center.
* The four-dimensional model keeps (c1, c2, c3, rho) under the form of
  signature ++--.  Two spheres are in oriented contact exactly when their
  lifted difference is isotropic there.
* The five-dimensional model uses
      M(S) = (c1, c2, (1 - <c,c> + rho^2)/2, c3, (1 + <c,c> - rho^2)/2)
  under y1^2+y2^2+y3^2-y4^2-y5^2, so that the form evaluates to rho^2; it
  forgets the orientation.  Affine normalization divides by y3 + y5.
* The six-dimensional model appends rho as a sixth coordinate with another
  minus sign; every lift lands on the null quadric there, and oriented
  contact is polarity with respect to that quadric.
* An oriented isotropic line is stored as (base, dir, ospan): base is the
  point of the line in the base plane, dir the isotropic direction scaled to
  dir[2] = 1 (its horizontal part is then a unit vector), and ospan the
  second spanning direction of the lifted plane in the ++-- model,
  gauge-fixed to ospan = (+-(-d2, d1), 0, 1).  The two signs are the two
  orientations of the line; `side` selects one deterministically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ContactElementCase,
    DegenerateEdge,
    DegenerateFace,
    LightConeSingularity,
    NonIsotropicDirection,
    NotASphere,
)

DEFAULT_EPS = 1e-9

_J3 = np.array([1.0, 1.0, -1.0])
_J4 = np.array([1.0, 1.0, -1.0, -1.0])
_J5 = np.array([1.0, 1.0, 1.0, -1.0, -1.0])
_J6 = np.array([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])


def lorentz_dot(x, y) -> float:
    return float(x[0] * y[0] + x[1] * y[1] - x[2] * y[2])


def lorentz_sq(x) -> float:
    return lorentz_dot(x, x)


def cyclo_dot(x, y) -> float:
    return float(np.dot(_J4 * np.asarray(x), y))


def cyclo_sq(x) -> float:
    return cyclo_dot(x, x)


def mobius_dot(x, y) -> float:
    return float(np.dot(_J5 * np.asarray(x), y))


def mobius_q(x) -> float:
    return mobius_dot(x, x)


def lie_dot(x, y) -> float:
    return float(np.dot(_J6 * np.asarray(x), y))


def lie_q(x) -> float:
    return lie_dot(x, x)


def classify(v, eps: float = DEFAULT_EPS) -> str:
    """Causal type of a vector: 'spacelike', 'isotropic' or 'timelike'.

    The isotropic band is relative: |<v,v>| <= eps * (1 + |v|^2) with the
    Euclidean square norm on the right, so scaling a configuration does not
    change the classification of its near-null directions.
    """
    q = lorentz_sq(v)
    if abs(q) <= eps * (1.0 + float(np.dot(v, v))):
        return "isotropic"
    return "spacelike" if q > 0 else "timelike"


@dataclass(frozen=True)
class OrientedSphere:
    """Sphere {x : <x-c,x-c> = rho^2} with signed radius rho."""

    center: np.ndarray
    rho: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "rho", float(self.rho))

    def kind(self, eps: float = DEFAULT_EPS) -> str:
        scale = 1.0 + float(np.dot(self.center, self.center))
        return "null" if self.rho**2 <= eps * scale else "timelike"

    def is_null(self, eps: float = DEFAULT_EPS) -> bool:
        return self.kind(eps) == "null"


@dataclass(frozen=True)
class SpacelikeCircle:
    """Circle in a spacelike plane {x : <n,x> = offset}, <n,n> = -1."""

    center: np.ndarray
    radius: float
    normal: np.ndarray
    offset: float


# -- lifts -------------------------------------------------------------------

def cyclo_lift(s: OrientedSphere) -> np.ndarray:
    return np.array([s.center[0], s.center[1], s.center[2], s.rho])


def cyclo_unlift(x) -> OrientedSphere:
    x = np.asarray(x, dtype=float)
    return OrientedSphere(x[:3].copy(), float(x[3]))


def oriented_contact_residual(s: OrientedSphere, t: OrientedSphere) -> float:
    """Squared ++-- distance of the lifts; zero iff oriented contact."""
    return cyclo_sq(cyclo_lift(s) - cyclo_lift(t))


def tangential_distance_sq(s: OrientedSphere, t: OrientedSphere) -> float:
    """<c-c',c-c'> - (rho-rho')^2, the square of the tangential distance."""
    return oriented_contact_residual(s, t)


def mobius_lift(s: OrientedSphere) -> np.ndarray:
    c = s.center
    u = lorentz_sq(c) - s.rho**2
    return np.array([c[0], c[1], (1.0 - u) / 2.0, c[2], (1.0 + u) / 2.0])


def mobius_lift_point(x) -> np.ndarray:
    return mobius_lift(OrientedSphere(np.asarray(x, dtype=float), 0.0))


def point_from_mobius(y, eps: float = DEFAULT_EPS):
    """Affine point of a null vector of the five-dimensional model.

    Raises PointAtInfinity when the normalizing coordinate vanishes.
    """
    from .errors import PointAtInfinity

    y = np.asarray(y, dtype=float)
    lam = y[2] + y[4]
    if abs(lam) <= eps * float(np.max(np.abs(y)) + 1e-300):
        raise PointAtInfinity("normalizing coordinate vanishes")
    return np.array([y[0], y[1], y[3]]) / lam


def mobius_touch_residual(s: OrientedSphere, t: OrientedSphere) -> float:
    """<M(S),M(T)>^2 - q(M(S)) q(M(T)); zero iff the spheres touch as sets."""
    ms, mt = mobius_lift(s), mobius_lift(t)
    return mobius_dot(ms, mt) ** 2 - mobius_q(ms) * mobius_q(mt)


def lie_lift(s: OrientedSphere) -> np.ndarray:
    return np.append(mobius_lift(s), s.rho)


def sphere_from_lie(y, eps: float = DEFAULT_EPS) -> OrientedSphere:
    """Normalize a point of the six-dimensional null quadric to a sphere."""
    y = np.asarray(y, dtype=float)
    lam = y[2] + y[4]
    if abs(lam) <= eps * float(np.max(np.abs(y)) + 1e-300):
        raise NotASphere("lift normalizes to a plane, not a sphere")
    return OrientedSphere(np.array([y[0], y[1], y[3]]) / lam, float(y[5] / lam))


# -- inversion ---------------------------------------------------------------

def invert_point(s: OrientedSphere, x, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Inversion in the sphere: x -> c + rho^2 (x-c)/<x-c,x-c>.

    Fixes the sphere pointwise and is an involution away from the light
    cone of the center, where it raises LightConeSingularity.
    """
    x = np.asarray(x, dtype=float)
    d = x - s.center
    q = lorentz_sq(d)
    if abs(q) < eps * max(s.rho**2, eps):
        raise LightConeSingularity("point on the light cone of the inversion center")
    return s.center + (s.rho**2 / q) * d


# -- oriented isotropic lines ------------------------------------------------

@dataclass(frozen=True)
class OrientedIsoLine:
    """Isotropic line with an orientation choice; see the module docstring."""

    base: np.ndarray
    dir: np.ndarray
    ospan: np.ndarray

    def point_at(self, t: float) -> np.ndarray:
        return self.base + t * self.dir

    def base_plane_point(self) -> np.ndarray:
        """Intersection with the base plane x3 = 0, as a 2-vector."""
        return self.base[:2].copy()

    def side(self) -> int:
        """+1 if ospan is the lexicographically larger candidate, else -1."""
        v = np.array([-self.dir[1], self.dir[0]])
        cand = [np.array([v[0], v[1], 0.0, 1.0]), np.array([-v[0], -v[1], 0.0, 1.0])]
        cand.sort(key=lambda a: tuple(a))
        larger = cand[1]
        return +1 if abs(float(np.dot(self.ospan[:2], larger[:2])) - 1.0) < 1e-9 else -1


def make_iso_line(p, d, side: int = +1, eps: float = DEFAULT_EPS) -> OrientedIsoLine:
    """Canonical oriented line through p with isotropic direction d.

    The direction is rescaled to d[2] = 1 and its horizontal part snapped to
    the unit circle, the base point is slid to the base plane, and `side`
    picks the lexicographically larger (+1) or smaller (-1) of the two
    admissible ospan vectors.
    """
    p = np.asarray(p, dtype=float)
    d = np.asarray(d, dtype=float)
    if classify(d, eps) != "isotropic":
        raise NonIsotropicDirection(f"direction {d} is not isotropic")
    if abs(d[2]) <= eps * float(np.max(np.abs(d))):
        raise NonIsotropicDirection("isotropic direction with vanishing vertical part")
    d = d / d[2]
    h = math.hypot(d[0], d[1])
    if h == 0.0:
        raise NonIsotropicDirection("degenerate direction")
    d = np.array([d[0] / h, d[1] / h, 1.0])
    base = p - p[2] * d
    base[2] = 0.0
    v = np.array([-d[1], d[0]])
    cands = sorted(
        (np.array([v[0], v[1], 0.0, 1.0]), np.array([-v[0], -v[1], 0.0, 1.0])),
        key=lambda a: tuple(a),
    )
    ospan = cands[1] if side >= 0 else cands[0]
    return OrientedIsoLine(base, d, ospan)


def iso_line_close(a: OrientedIsoLine, b: OrientedIsoLine, tol: float) -> bool:
    return (
        float(np.max(np.abs(a.base - b.base))) <= tol
        and float(np.max(np.abs(a.dir - b.dir))) <= tol
        and float(np.max(np.abs(a.ospan - b.ospan))) <= tol
    )


def iso_line_contact_residual(s: OrientedSphere, line: OrientedIsoLine) -> float:
    """Membership defect of the lifted sphere in the lifted plane of the line.

    The lifted plane is fully isotropic, so the metric offers no orthogonal
    projection; the residual is the squared Euclidean distance of the
    four-dimensional lift from the plane, which vanishes exactly on contact.
    """
    w = cyclo_lift(s) - np.append(line.base, 0.0)
    a1 = np.append(line.dir, 0.0)
    a2 = line.ospan
    # 2x2 normal equations; the basis is well conditioned by construction
    g11, g12, g22 = np.dot(a1, a1), np.dot(a1, a2), np.dot(a2, a2)
    b1, b2 = np.dot(w, a1), np.dot(w, a2)
    det = g11 * g22 - g12 * g12
    alpha = (b1 * g22 - b2 * g12) / det
    beta = (g11 * b2 - g12 * b1) / det
    res = w - alpha * a1 - beta * a2
    return float(np.dot(res, res))


def sphere_from_axis_and_line(foot, line: OrientedIsoLine) -> OrientedSphere:
    """Sphere in oriented contact with the line, centered on a vertical axis.

    The center is the intersection of the axis through `foot` with the
    isotropic plane of the line; the signed radius follows the orientation.
    An axis through a point of the line yields the null sphere there.
    """
    foot = np.asarray(foot, dtype=float)
    d = line.dir
    t = line.base[2] + d[0] * (foot[0] - line.base[0]) + d[1] * (foot[1] - line.base[1])
    center = np.array([foot[0], foot[1], t])
    rel = center - line.base
    gamma_vec = rel - rel[2] * d
    v = np.array([-d[1], d[0], 0.0])
    gamma = float(np.dot(gamma_vec, v))
    sigma = 1.0 if float(np.dot(line.ospan[:2], v[:2])) >= 0.0 else -1.0
    return OrientedSphere(center, sigma * gamma)


def smallest_circle(s: OrientedSphere) -> SpacelikeCircle:
    """Waist circle of the sphere: its section by the horizontal plane
    through the center (a point for a null sphere)."""
    n = np.array([0.0, 0.0, 1.0])
    return SpacelikeCircle(s.center.copy(), abs(s.rho), n, lorentz_dot(n, s.center))


# -- vertical reflections ----------------------------------------------------

def _reflect2(a, u, xy):
    u = np.asarray(u, dtype=float)
    u = u / math.hypot(u[0], u[1])
    rel = np.asarray(xy, dtype=float) - a
    return a + 2.0 * np.dot(rel, u) * u - rel


def reflect_vertical_point(a, u, x) -> np.ndarray:
    """Reflect across the vertical plane over the base-plane line (a, u)."""
    x = np.asarray(x, dtype=float)
    out = x.copy()
    out[:2] = _reflect2(np.asarray(a, dtype=float), u, x[:2])
    return out


def reflect_vertical_line(a, u, line: OrientedIsoLine) -> OrientedIsoLine:
    a = np.asarray(a, dtype=float)
    u = np.asarray(u, dtype=float)
    uu = u / math.hypot(u[0], u[1])
    base = reflect_vertical_point(a, uu, line.base)
    lin = lambda w: 2.0 * np.dot(w, uu) * uu - w  # linear part, 2D
    d2 = lin(line.dir[:2])
    d = np.array([d2[0], d2[1], line.dir[2]])
    s2 = lin(line.ospan[:2])
    ospan = np.array([s2[0], s2[1], line.ospan[2], line.ospan[3]])
    return OrientedIsoLine(base, d, ospan)


# -- contact points and common lines -----------------------------------------

def contact_point(s: OrientedSphere, t: OrientedSphere, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Touching point of two spheres in oriented contact with rho_s != rho_t."""
    dr = s.rho - t.rho
    scale = 1.0 + abs(s.rho) + abs(t.rho)
    if abs(dr) <= eps * scale:
        raise DegenerateEdge("touching point at infinity for equal signed radii")
    return s.center + (s.rho / dr) * (t.center - s.center)


def iso_line_from_sphere_quad(spheres, eps: float = DEFAULT_EPS) -> OrientedIsoLine:
    """Common oriented line of four pairwise touching spheres.

    Their four-dimensional lifts span a fully isotropic plane; that plane
    meets the base-plane slice in the line, and the remaining span direction
    fixes the orientation.  Raises DegenerateFace when the lifts do not span
    a plane (rank defect or excess).
    """
    pts = np.array([cyclo_lift(s) for s in spheres])
    mu = pts.mean(axis=0)
    centered = pts - mu
    scale = float(np.max(np.abs(pts))) + 1.0
    _, sv, vt = np.linalg.svd(centered, full_matrices=False)
    if sv[0] <= eps * scale or sv[1] <= 1e-7 * sv[0]:
        raise DegenerateFace("sphere lifts do not span a plane")
    if sv[2] > 1e-6 * sv[0]:
        raise DegenerateFace("sphere lifts are not coplanar")
    v0, v1 = vt[0], vt[1]
    # direction with vanishing fourth component lies in the base slice
    g = np.array([-v1[3], v0[3]])
    dline = g[0] * v0 + g[1] * v1
    if float(np.max(np.abs(dline))) <= eps:
        raise DegenerateFace("plane is parallel to the radius axis")
    d3 = dline[:3]
    # roundoff in the lifts tilts the span off the cone; snap within the
    # same relative tolerance as the coplanarity gate
    hor = float(np.hypot(d3[0], d3[1]))
    ver = abs(float(d3[2]))
    if hor <= eps * (ver + 1.0) or ver <= eps * (hor + 1.0):
        raise DegenerateFace("plane span direction is degenerate")
    if abs(hor - ver) > 1e-6 * (hor + ver):
        raise DegenerateFace("plane span direction is not isotropic")
    d3 = np.array([d3[0] * ver / hor, d3[1] * ver / hor, d3[2]])
    # remaining direction, normalized to fourth component one
    u = v0 / v0[3] if abs(v0[3]) >= abs(v1[3]) else v1 / v1[3]
    dn = make_iso_line(np.zeros(3), d3 if d3[2] > 0 else -d3, side=+1).dir
    ospan = u - u[2] * np.array([dn[0], dn[1], 1.0, 0.0])
    v = np.array([-dn[1], dn[0]])
    sigma = 1.0 if float(np.dot(ospan[:2], v)) >= 0.0 else -1.0
    base4 = mu - mu[3] * u
    base = base4[:3] - base4[2] * dn
    line = OrientedIsoLine(
        np.array([base[0], base[1], 0.0]),
        dn,
        np.array([sigma * v[0], sigma * v[1], 0.0, 1.0]),
    )
    return line
