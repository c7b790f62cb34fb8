"""Null congruences, incircular nets, and fixture generators.

A congruence is null when every black sphere is a light cone.  Its plane
shadow is then a circle packing whose black sublattice forms an incircular
net: each quad of black points around a white vertex has an inscribed
circle centered at the white point.  The preferred lift of an incircular
net seeds the line over a black diagonal at a chosen apex height, which
forces both seed blacks onto their cones; flatness spreads nullity.
"""
from __future__ import annotations

import numpy as np

from .errors import NotIncircular, NotPacking
from .grid import QuadGrid
from .lift import _congruence_from_lines, _lines_by_vertical_reflection
from .lorentz import DEFAULT_EPS, lorentz_sq, make_iso_line
from .nets import CirclePattern, ContactCongruence, IncircularNet
from .patterns import is_circle_packing_residual

S2 = np.sqrt(2.0)


def generate_grid(mw: int, mh: int):
    """The standard exact fixture over the mw x mh integer lattice.

    Black vertices carry light cones whose apex height alternates between 0
    and sqrt(2) by column; white spheres sit at height sqrt(2)/2 with signed
    radius +-sqrt(2)/2 by column.  Face lines run up the black diagonals
    from the even-column apex.  Returns the incircular net and the
    congruence.
    """
    if mw < 3 or mh < 3:
        raise NotIncircular("fixture needs at least a 3x3 patch")
    grid = QuadGrid(mw, mh)
    ii, jj = np.meshgrid(np.arange(mw), np.arange(mh), indexing="ij")
    black = (ii + jj) % 2 == 0
    even_col = ii % 2 == 0

    centers = np.zeros((mw, mh, 3))
    centers[:, :, 0] = ii
    centers[:, :, 1] = jj
    centers[:, :, 2] = np.where(black, np.where(even_col, 0.0, S2), S2 / 2)
    rho = np.where(black, 0.0, np.where(even_col, -S2 / 2, S2 / 2))

    base = np.zeros((mw - 1, mh - 1, 3))
    dirs = np.zeros((mw - 1, mh - 1, 3))
    ospan = np.zeros((mw - 1, mh - 1, 4))
    for f in grid.faces():
        b0, b1 = grid.black_diagonal(f)
        if b0[0] % 2 != 0:
            b0, b1 = b1, b0
        p0 = np.array([b0[0], b0[1]], dtype=float)
        p1 = np.array([b1[0], b1[1]], dtype=float)
        d2 = (p1 - p0) / S2
        base[f[0], f[1]] = (p0[0], p0[1], 0.0)
        dirs[f[0], f[1]] = (d2[0], d2[1], 1.0)
        sigma = -1.0 if (f[0] + f[1]) % 2 == 0 else 1.0
        ospan[f[0], f[1]] = (-sigma * d2[1], sigma * d2[0], 0.0, 1.0)
    cc = ContactCongruence(grid, centers, rho, base, dirs, ospan)

    bc = np.full((mw, mh, 2), np.nan)
    bc[black, 0] = ii[black]
    bc[black, 1] = jj[black]
    icc = np.full((mw, mh, 2), np.nan)
    icr = np.full((mw, mh), np.nan)
    icc[~black, 0] = ii[~black]
    icc[~black, 1] = jj[~black]
    icr[~black] = S2 / 2
    inc = IncircularNet(grid, bc, icc, icr)
    return inc, cc


def null_congruence_residual(cc: ContactCongruence) -> float:
    """Worst black signed radius in absolute value."""
    mask = cc.grid.black_mask()
    return float(np.max(np.abs(cc.rho[mask])))


def white_null_margin(cc: ContactCongruence) -> float:
    """Smallest white |radius|; a null congruence should keep this positive."""
    mask = cc.grid.black_mask()
    return float(np.min(np.abs(cc.rho[~mask])))


def _side_lines(quad):
    """(point, unit normal) per side of a cyclic planar quad."""
    out = []
    for k in range(4):
        a, b = quad[k], quad[(k + 1) % 4]
        u = b - a
        n = np.array([-u[1], u[0]]) / np.linalg.norm(u)
        out.append((a, n))
    return out


def _black_quad_around(inc: IncircularNet, w):
    i, j = w
    cyc = [(i + 1, j), (i, j + 1), (i - 1, j), (i, j - 1)]
    if not all(inc.grid.has_vertex(v) for v in cyc):
        return None
    return np.array([inc.black_centers[v[0], v[1]] for v in cyc])


def incircularity_residual(inc: IncircularNet) -> float:
    """Worst defect of 'incircle touches all four side lines' over full quads."""
    worst = 0.0
    seen = False
    for w in inc.grid.vertices():
        if inc.grid.is_black(w):
            continue
        quad = _black_quad_around(inc, w)
        if quad is None or not np.all(np.isfinite(quad)):
            continue
        c = inc.incircle_centers[w[0], w[1]]
        r = inc.incircle_radii[w[0], w[1]]
        if not (np.all(np.isfinite(c)) and np.isfinite(r)):
            continue
        seen = True
        for a, n in _side_lines(quad):
            worst = max(worst, abs(abs(float(n @ (c - a))) - r))
    if not seen:
        raise NotIncircular("no complete black quad with incircle data")
    return worst


def incircular_from_packing(
    p: CirclePattern, eps: float = DEFAULT_EPS
) -> IncircularNet:
    """Read the incircular net off a circle packing's black sublattice.

    Incircle centers are the white centers; radii average the distances to
    the available side lines of the surrounding black quad.
    """
    tol = max(1e3 * eps, 1e-8) * max(p.scale(), 1.0)
    if is_circle_packing_residual(p) > tol:
        raise NotPacking("black circles do not touch along the diagonals")
    grid = p.grid
    black = grid.black_mask()
    bc = np.full(grid.vertex_shape + (2,), np.nan)
    bc[black] = p.centers[black]
    icc = np.full(grid.vertex_shape + (2,), np.nan)
    icr = np.full(grid.vertex_shape, np.nan)
    for w in grid.vertices():
        if grid.is_black(w):
            continue
        i, j = w
        cyc = [(i + 1, j), (i, j + 1), (i - 1, j), (i, j - 1)]
        pts = [p.centers[v[0], v[1]] for v in cyc if grid.has_vertex(v)]
        if len(pts) < 2:
            continue
        c = p.centers[i, j]
        ds = []
        for k in range(len(pts)):
            a, b = pts[k], pts[(k + 1) % len(pts)]
            u = b - a
            nrm = np.linalg.norm(u)
            if nrm == 0.0:
                continue
            n = np.array([-u[1], u[0]]) / nrm
            ds.append(abs(float(n @ (c - a))))
        if not ds:
            continue
        icc[i, j] = c
        icr[i, j] = float(np.mean(ds))
    return IncircularNet(grid, bc, icc, icr)


def _conical_centers(inc: IncircularNet) -> np.ndarray:
    grid = inc.grid
    black = grid.black_mask()
    centers = np.where(black[:, :, None], inc.black_centers, inc.incircle_centers)
    if not np.all(np.isfinite(centers)):
        raise NotIncircular("missing centers; cannot assemble the center net")
    return centers


def null_lift(
    inc: IncircularNet, height0: float, sign0: int, eps: float = DEFAULT_EPS
) -> ContactCongruence:
    """Preferred lift of an incircular net to a (null) congruence.

    The seed line runs over the black diagonal of the corner face, through
    the apex (B0, height0); sign0 picks its orientation.
    """
    tol = max(1e3 * eps, 1e-7) * max(inc.scale(), 1.0)
    if incircularity_residual(inc) > tol:
        raise NotIncircular("black quads admit no common inscribed circles")
    grid = inc.grid
    centers2d = _conical_centers(inc)
    f0 = (0, 0)
    b0, b1 = grid.black_diagonal(f0)
    p0 = inc.black_centers[b0[0], b0[1]]
    p1 = inc.black_centers[b1[0], b1[1]]
    u = (p1 - p0) / np.linalg.norm(p1 - p0)
    line0 = make_iso_line(
        np.array([p0[0], p0[1], height0]), np.array([u[0], u[1], 1.0]), side=sign0
    )
    scale = inc.scale()
    lines = _lines_by_vertical_reflection(grid, centers2d, f0, line0, eps, scale)
    return _congruence_from_lines(grid, centers2d, lines, eps, scale)


def apex_height_consistency(cc: ContactCongruence) -> float:
    """Worst violation of |height step| = |projected step| on black diagonals."""
    grid = cc.grid
    worst = 0.0
    for f in grid.faces():
        b0, b1 = grid.black_diagonal(f)
        c0 = cc.centers[b0[0], b0[1]]
        c1 = cc.centers[b1[0], b1[1]]
        worst = max(
            worst, abs(abs(c1[2] - c0[2]) - float(np.linalg.norm(c1[:2] - c0[:2])))
        )
    return worst


def generate_isothermic(seed: int, size: int = 5, eps: float = DEFAULT_EPS):
    """Random curved fixture: a bounded sphere inversion of the exact grid.

    Deterministic in seed; retries until no sphere of the image degenerates
    to a plane and the congruence stays well separated.  Returns the
    transformed congruence.
    """
    from .transforms import apply_mobius, sample_mobius

    _inc, cc = generate_grid(size, size)
    rng = np.random.default_rng(seed)
    last = None
    for _ in range(100):
        t = sample_mobius(rng, patch_center=cc.centers.reshape(-1, 3).mean(axis=0),
                          patch_radius=float(np.ptp(cc.centers)) / 2 + 1.0)
        try:
            out = apply_mobius(t, cc, eps=eps)
        except Exception as exc:  # rejection: try a fresh transform
            last = exc
            continue
        span = float(np.ptp(out.centers))
        if span > 1e3 or span < 1e-3:
            continue
        if float(np.min(np.abs(out.rho[~out.grid.black_mask()]))) < 1e-3:
            continue
        return out
    from .errors import DegenerateTransform

    raise DegenerateTransform(f"no admissible transform found: {last}")


def _null_step_dir(rng, jitter, src, tgt, up):
    # aim at the ideal lattice spot so drift self-corrects, then jitter
    th = np.arctan2(tgt[1] - src[1], tgt[0] - src[0]) + jitter * rng.uniform(-1, 1)
    return np.array([np.cos(th), np.sin(th), up])


def _propagate_null_apexes(grid: QuadGrid, rng, jitter: float):
    """Black apex points with every face diagonal isotropic, or None.

    Bottom-row blacks are free seeds.  A black with one earlier diagonal
    neighbor takes a free null step from it; with two, the apex is the
    light-cone intersection, which is linear in the step length.
    """
    blacks = [v for v in grid.vertices() if grid.is_black(v)]
    blacks.sort(key=lambda v: (v[0] + v[1], v[1] - v[0]))
    apex = {}
    for i, j in blacks:
        pa = apex.get((i - 1, j - 1))
        pb = apex.get((i + 1, j - 1))
        # odd columns sit above their even neighbors, as in the exact grid
        up = 1.0 if i % 2 == 1 else -1.0
        if pa is None and pb is None:
            apex[i, j] = np.array(
                [
                    i + jitter * rng.uniform(-1.0, 1.0),
                    jitter * rng.uniform(-1.0, 1.0),
                    0.2 * jitter * rng.uniform(-1.0, 1.0),
                ]
            )
        elif pa is not None and pb is not None:
            d = _null_step_dir(rng, jitter, pa, (i, j), up)
            rel = pa - pb
            den = rel[0] * d[0] + rel[1] * d[1] - rel[2] * d[2]
            if abs(den) < 0.2:
                return None
            t = -lorentz_sq(rel) / (2.0 * den)
            p = pa + t * d
            # fail fast once the patch wanders off the lattice
            if np.hypot(p[0] - i, p[1] - j) > 0.8 or abs(p[2] - (S2 if up > 0 else 0.0)) > 0.8:
                return None
            apex[i, j] = p
        else:
            src = pa if pa is not None else pb
            d = _null_step_dir(rng, jitter, src, (i, j), up)
            want = S2 if up > 0 else 0.0  # pull heights back to the class levels
            t = np.clip(up * (want - src[2]), 0.8, 2.5)
            apex[i, j] = src + t * (1.0 + 0.3 * jitter * rng.uniform(-1.0, 1.0)) * d
    return apex


def _sphere_through_apexes(pts):
    """Lorentz center and squared radius of the sphere through the points.

    Underdetermined boundary stars take the minimum-norm center.
    """
    p0 = pts[0]
    rows = []
    rhs = []
    for p in pts[1:]:
        q = p - p0
        rows.append([q[0], q[1], -q[2]])
        rhs.append(0.5 * (lorentz_sq(p) - lorentz_sq(p0)))
    c = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)[0]
    return c, lorentz_sq(p0 - c)


def generate_null(seed: int, size: int = 5, jitter: float | None = None,
                  eps: float = DEFAULT_EPS) -> ContactCongruence:
    """Random null congruence with no extra symmetry.

    Black apexes grow from seeded bottom-row points by jittered null steps;
    interior apexes are light-cone intersections of their two predecessors.
    White spheres solve the incidence system of their black neighbors, so
    the plane shadow is incircular by construction and the preferred lift
    goes through.  Deterministic in seed; draws that collapse are redrawn.
    """
    if size < 3:
        raise NotIncircular("fixture needs at least a 3x3 patch")
    if jitter is None:
        # step noise is amplified ~20x by the depth of the patch
        jitter = 0.25 / size
    grid = QuadGrid(size, size)
    rng = np.random.default_rng(seed)
    last = None
    for _ in range(100):
        apex = _propagate_null_apexes(grid, rng, jitter)
        if apex is None:
            continue
        bc = np.full(grid.vertex_shape + (2,), np.nan)
        for v, p in apex.items():
            bc[v] = p[:2]
        icc = np.full(grid.vertex_shape + (2,), np.nan)
        icr = np.full(grid.vertex_shape, np.nan)
        ok = True
        for w in grid.vertices():
            if grid.is_black(w):
                continue
            i, j = w
            nb = [apex[v] for v in ((i + 1, j), (i, j + 1), (i - 1, j), (i, j - 1))
                  if v in apex]
            c, rho2 = _sphere_through_apexes(nb)
            if rho2 < 0.04:
                ok = False
                break
            icc[w] = c[:2]
            icr[w] = np.sqrt(rho2)
        if not ok:
            continue
        inc = IncircularNet(grid, bc, icc, icr)
        try:
            return null_lift(inc, float(apex[0, 0][2]), 1, eps=eps)
        except Exception as exc:  # rejection: redraw the patch
            last = exc
            continue
    raise NotIncircular(f"no usable draw survived the degeneracy guards: {last}")
