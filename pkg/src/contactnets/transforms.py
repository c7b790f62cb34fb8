"""Transformation groups of the three quadric models, with bounded samplers.

Spheres are pushed through the appropriate lift; face lines are not mapped
directly but rebuilt afterwards as the common oriented isotropic line of
each face's four image spheres, which exists and is unique by contact.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContactLost, DegenerateTransform, SphereToPlaneDegeneracy
from .lorentz import (
    DEFAULT_EPS,
    OrientedSphere,
    cyclo_lift,
    cyclo_unlift,
    iso_line_from_sphere_quad,
    lie_lift,
    lorentz_sq,
    mobius_lift,
)
from .nets import ContactCongruence

_G5 = np.diag([1.0, 1.0, 1.0, -1.0, -1.0])
_H4 = np.diag([1.0, 1.0, -1.0, -1.0])
_K6 = np.diag([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])


def _form_gap(a, g):
    # relative to the matrix magnitude: products lose ~|a|^2 eps per entry
    size = max(1.0, float(np.max(np.abs(a))) ** 2)
    return float(np.max(np.abs(a.T @ g @ a - g))) / size


@dataclass(frozen=True)
class MobiusTransform:
    matrix: np.ndarray  # 5x5, preserves diag(1,1,1,-1,-1)

    def __post_init__(self):
        a = np.asarray(self.matrix, float)
        object.__setattr__(self, "matrix", a)
        if a.shape != (5, 5) or _form_gap(a, _G5) > 1e-10:
            raise DegenerateTransform("matrix does not preserve the 5-space form")

    def inverse(self) -> "MobiusTransform":
        return MobiusTransform(_G5 @ self.matrix.T @ _G5)

    def compose(self, other: "MobiusTransform") -> "MobiusTransform":
        return MobiusTransform(self.matrix @ other.matrix)


@dataclass(frozen=True)
class LaguerreTransform:
    matrix: np.ndarray  # 4x4 with B^T H B = s H, s > 0
    shift: np.ndarray  # translation of the split 4-space

    def __post_init__(self):
        b = np.asarray(self.matrix, float)
        t = np.asarray(self.shift, float)
        object.__setattr__(self, "matrix", b)
        object.__setattr__(self, "shift", t)
        if b.shape != (4, 4) or t.shape != (4,):
            raise DegenerateTransform("bad shapes")
        s = self.scale_factor()
        if s <= 0 or _form_gap(b / np.sqrt(s), _H4) > 1e-10:
            raise DegenerateTransform("matrix is not a form similarity")

    def scale_factor(self) -> float:
        m = self.matrix.T @ _H4 @ self.matrix
        return float(m[0, 0])

    def inverse(self) -> "LaguerreTransform":
        s = self.scale_factor()
        binv = _H4 @ self.matrix.T @ _H4 / s
        return LaguerreTransform(binv, -binv @ self.shift)

    def compose(self, other: "LaguerreTransform") -> "LaguerreTransform":
        return LaguerreTransform(
            self.matrix @ other.matrix, self.matrix @ other.shift + self.shift
        )


@dataclass(frozen=True)
class LieTransform:
    matrix: np.ndarray  # 6x6, preserves diag(1,1,1,-1,-1,-1)

    def __post_init__(self):
        c = np.asarray(self.matrix, float)
        object.__setattr__(self, "matrix", c)
        if c.shape != (6, 6) or _form_gap(c, _K6) > 1e-10:
            raise DegenerateTransform("matrix does not preserve the 6-space form")

    def inverse(self) -> "LieTransform":
        return LieTransform(_K6 @ self.matrix.T @ _K6)

    def compose(self, other: "LieTransform") -> "LieTransform":
        return LieTransform(self.matrix @ other.matrix)


def lie_from_mobius(t: MobiusTransform) -> LieTransform:
    c = np.eye(6)
    c[:5, :5] = t.matrix
    return LieTransform(c)


# -- applying transforms to congruences --------------------------------------

def _sphere_from_lie_vector(y, eps):
    lam = y[2] + y[4]
    if abs(lam) <= 1e-6 * float(np.max(np.abs(y)) + 1e-300):
        raise SphereToPlaneDegeneracy("image sphere degenerates to a plane")
    return OrientedSphere(np.array([y[0], y[1], y[3]]) / lam, float(y[5] / lam))


def _rebuild(grid, spheres, eps) -> ContactCongruence:
    centers = np.zeros(grid.vertex_shape + (3,))
    rho = np.zeros(grid.vertex_shape)
    for v in grid.vertices():
        s = spheres[v]
        centers[v[0], v[1]] = s.center
        rho[v[0], v[1]] = s.rho
    base = np.zeros(grid.face_shape + (3,))
    dirs = np.zeros(grid.face_shape + (3,))
    ospan = np.zeros(grid.face_shape + (4,))
    for f in grid.faces():
        quad = [spheres[v] for v in grid.face_vertices(f)]
        line = iso_line_from_sphere_quad(quad, eps)
        base[f[0], f[1]] = line.base
        dirs[f[0], f[1]] = line.dir
        ospan[f[0], f[1]] = line.ospan
    out = ContactCongruence(grid, centers, rho, base, dirs, ospan)
    from .lift import congruence_residuals

    line_res, edge_res = congruence_residuals(out)
    tol = 1e-7 * max(out.scale(), 1.0) ** 2
    if line_res > tol or edge_res > tol:
        raise ContactLost(f"rebuilt congruence fails contact: {line_res:.2e}, {edge_res:.2e}")
    return out


def apply_mobius(t: MobiusTransform, cc: ContactCongruence, eps: float = DEFAULT_EPS):
    spheres = {}
    for v in cc.grid.vertices():
        s = cc.sphere_at(v)
        y = np.append(t.matrix @ mobius_lift(s), s.rho)
        spheres[v] = _sphere_from_lie_vector(y, eps)
    return _rebuild(cc.grid, spheres, eps)


def apply_laguerre(t: LaguerreTransform, cc: ContactCongruence, eps: float = DEFAULT_EPS):
    spheres = {}
    for v in cc.grid.vertices():
        s = cc.sphere_at(v)
        spheres[v] = cyclo_unlift(t.matrix @ cyclo_lift(s) + t.shift)
    return _rebuild(cc.grid, spheres, eps)


def apply_lie(t: LieTransform, cc: ContactCongruence, eps: float = DEFAULT_EPS):
    spheres = {}
    for v in cc.grid.vertices():
        y = t.matrix @ lie_lift(cc.sphere_at(v))
        spheres[v] = _sphere_from_lie_vector(y, eps)
    return _rebuild(cc.grid, spheres, eps)


# -- elementary building blocks ----------------------------------------------

def mobius_translation(b) -> MobiusTransform:
    """Lift of the ambient translation x -> x + b."""
    b = np.asarray(b, float)
    qb = lorentz_sq(b)
    a = np.eye(5)
    # coordinates (c1, c2, (1-u)/2, c3, (1+u)/2), u = <c,c> - rho^2
    dot_row = np.array([b[0], b[1], 0.0, -b[2], 0.0])
    for k, ci in ((0, 0), (1, 1), (3, 2)):
        a[k, 2] += b[ci]
        a[k, 4] += b[ci]
    a[2] -= dot_row
    a[2, 2] -= qb / 2
    a[2, 4] -= qb / 2
    a[4] += dot_row
    a[4, 2] += qb / 2
    a[4, 4] += qb / 2
    return MobiusTransform(a)


def mobius_linear(l) -> MobiusTransform:
    """Lift of a linear isometry of the ambient Lorentz space."""
    l = np.asarray(l, float)
    a = np.eye(5)
    ix = [0, 1, 3]
    for r, rr in enumerate(ix):
        for c, cc_ in enumerate(ix):
            a[rr, cc_] = l[r, c]
    return MobiusTransform(a)


def mobius_scaling(k: float) -> MobiusTransform:
    """Lift of x -> k x, rho -> k rho."""
    a = np.zeros((5, 5))
    a[0, 0] = a[1, 1] = a[3, 3] = k
    a[2, 2] = (1 + k * k) / 2
    a[2, 4] = (1 - k * k) / 2
    a[4, 2] = (1 - k * k) / 2
    a[4, 4] = (1 + k * k) / 2
    return MobiusTransform(a / k)


def mobius_inversion(s: OrientedSphere) -> MobiusTransform:
    """Reflection in the lift of the inversion sphere."""
    m = mobius_lift(s)
    q = float(m @ _G5 @ m)
    if abs(q) < 1e-12:
        raise DegenerateTransform("cannot invert in a null sphere")
    a = np.eye(5) - 2.0 * np.outer(m, _G5 @ m) / q
    return MobiusTransform(a)


def rotation3(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def boost3(s: float, axis: int = 0) -> np.ndarray:
    ch, sh = np.cosh(s), np.sinh(s)
    m = np.eye(3)
    m[axis, axis] = ch
    m[axis, 2] = sh
    m[2, axis] = sh
    m[2, 2] = ch
    return m


# -- samplers ----------------------------------------------------------------

def sample_mobius(rng, patch_center=None, patch_radius: float = 1.0) -> MobiusTransform:
    """Bounded random transform: isometries around an inversion whose center
    sits well below the patch, keeping images finite and well separated."""
    if patch_center is None:
        patch_center = np.zeros(3)
    patch_center = np.asarray(patch_center, float)
    depth = (2.0 + 2.0 * rng.random()) * patch_radius
    offset = rng.uniform(-0.5, 0.5, size=2) * patch_radius
    center = patch_center + np.array([offset[0], offset[1], -depth])
    radius = depth * rng.uniform(0.8, 1.2)
    parts = [
        mobius_linear(rotation3(rng.uniform(0, 2 * np.pi))),
        mobius_translation(rng.uniform(-0.3, 0.3, size=3) * patch_radius),
        mobius_inversion(OrientedSphere(center, radius)),
        mobius_linear(rotation3(rng.uniform(0, 2 * np.pi))),
        mobius_scaling(rng.uniform(0.6, 1.6)),
    ]
    out = parts[0]
    for p in parts[1:]:
        out = out.compose(p)
    return out


def sample_mobius_isometry(rng, patch_radius: float = 1.0) -> MobiusTransform:
    """Random lift of an ambient Lorentz isometry (no inversion)."""
    parts = [
        mobius_linear(rotation3(rng.uniform(0, 2 * np.pi))),
        mobius_linear(boost3(rng.uniform(-0.25, 0.25), axis=int(rng.integers(2)))),
        mobius_translation(rng.uniform(-0.5, 0.5, size=3) * patch_radius),
    ]
    out = parts[0]
    for p in parts[1:]:
        out = out.compose(p)
    return out


def sample_laguerre(rng, patch_radius: float = 1.0) -> LaguerreTransform:
    def rot(i, j, th):
        m = np.eye(4)
        m[i, i] = m[j, j] = np.cos(th)
        m[i, j] = -np.sin(th)
        m[j, i] = np.sin(th)
        return m

    def boost(i, j, s):
        m = np.eye(4)
        m[i, i] = m[j, j] = np.cosh(s)
        m[i, j] = m[j, i] = np.sinh(s)
        return m

    b = (
        rot(0, 1, rng.uniform(0, 2 * np.pi))
        @ boost(0, 2, rng.uniform(-0.3, 0.3))
        @ rot(2, 3, rng.uniform(0, 2 * np.pi))
        @ boost(1, 3, rng.uniform(-0.3, 0.3))
    )
    s = rng.uniform(0.7, 1.4)
    t = rng.uniform(-0.5, 0.5, size=4) * patch_radius
    return LaguerreTransform(np.sqrt(s) * b, t)


def sample_lie(rng, strength: float = 0.15) -> LieTransform:
    """Product of three near-identity double reflections of the 6-space form."""
    c = np.eye(6)
    for _ in range(3):
        n = rng.normal(size=6)
        while abs(float(n @ _K6 @ n)) < 0.1 * float(n @ n):
            n = rng.normal(size=6)
        d = n + strength * rng.normal(size=6)
        for v in (n, d):
            q = float(v @ _K6 @ v)
            c = (np.eye(6) - 2.0 * np.outer(v, _K6 @ v) / q) @ c
    return LieTransform(c)
