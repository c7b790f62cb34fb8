"""Cross-ratio vertex quantities of planar nets, subvariety residuals, and
the single-color update formulas.

All field maps return dense NaN-padded arrays over the full vertex grid;
an entry is NaN wherever the stencil reaches outside the patch or outside
the finite part of the input field.  Formulas that invert a value insist
on positivity there and raise NonpositiveX otherwise, instead of extending
through the pole.
"""
from __future__ import annotations

import numpy as np

from .errors import (
    DegenerateCrossRatio,
    DegenerateStar,
    NonpositiveX,
    NotConical,
    NotNull,
    PointAtInfinity,
    ZeroDenominator,
)
from .lorentz import DEFAULT_EPS
from .miquel import sweep_black
from .nets import ConicalNet, ContactCongruence, CycloNet
from .packing import null_congruence_residual

_J3 = np.array([1.0, 1.0, -1.0])
_J4 = np.array([1.0, 1.0, -1.0, -1.0])


def x_vars(net: ConicalNet, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Real cross-ratio-like quantity at every interior vertex.

    Minus the product of the two horizontal neighbor differences over the
    product of the two vertical ones, as complex numbers.  The result is
    real exactly when the four corner angles at the vertex pair up, which
    is the defining property of the input net.
    """
    z = net.centers[..., 0] + 1j * net.centers[..., 1]
    c = z[1:-1, 1:-1]
    d1p = z[2:, 1:-1] - c
    d1m = z[:-2, 1:-1] - c
    d2p = z[1:-1, 2:] - c
    d2m = z[1:-1, :-2] - c
    small = eps * max(net.scale(), 1.0)
    for d in (d1p, d1m, d2p, d2m):
        if np.any(np.abs(d) <= small):
            raise DegenerateStar("coinciding neighbor centers")
    x = -(d1p * d1m) / (d2p * d2m)
    if np.any(np.abs(x.imag) > 1e-6 * np.maximum(1.0, np.abs(x.real))):
        raise NotConical("vertex star without opposite-angle pairing")
    out = np.full(net.grid.vertex_shape, np.nan)
    out[1:-1, 1:-1] = x.real
    return out


def x_vars_cyclo(h: CycloNet, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Same quantity from the split-signature lift.

    Ratio of the squared split-form lengths of the two opposite-neighbor
    differences; no complex arithmetic and no angle condition involved.
    """
    p = h.points
    d1 = p[2:, 1:-1] - p[:-2, 1:-1]
    d2 = p[1:-1, 2:] - p[1:-1, :-2]
    q1 = np.einsum("ijk,k->ij", d1 * d1, _J4)
    q2 = np.einsum("ijk,k->ij", d2 * d2, _J4)
    if np.any(np.abs(q2) <= (eps * max(h.scale(), 1.0)) ** 2):
        raise ZeroDenominator("vertical opposite-neighbor difference is isotropic")
    out = np.full(h.grid.vertex_shape, np.nan)
    out[1:-1, 1:-1] = q1 / q2
    return out


def x_vars_null(cc: ContactCongruence, eps: float = DEFAULT_EPS) -> np.ndarray:
    """White-vertex values straight from the sphere centers.

    Requires point spheres at the black vertices; then tangential distances
    collapse to plain Lorentz distances of opposite centers.  Black and
    boundary entries are NaN.
    """
    scale = max(cc.scale(), 1.0)
    if null_congruence_residual(cc) > max(1e3 * eps, 1e-9) * scale:
        raise NotNull("black spheres have nonzero radii")
    cen = cc.centers
    d1 = cen[2:, 1:-1] - cen[:-2, 1:-1]
    d2 = cen[1:-1, 2:] - cen[1:-1, :-2]
    q1 = np.einsum("ijk,k->ij", d1 * d1, _J3)
    q2 = np.einsum("ijk,k->ij", d2 * d2, _J3)
    out = np.full(cc.grid.vertex_shape, np.nan)
    with np.errstate(divide="ignore", invalid="ignore"):
        out[1:-1, 1:-1] = q1 / q2
    out[cc.grid.black_mask()] = np.nan
    inner = out[1:-1, 1:-1]
    if np.any(np.isfinite(inner) & (np.abs(q2) <= (eps * scale) ** 2)):
        raise ZeroDenominator("vertical black diagonal is isotropic")
    return out


def _window(x, i, j):
    return (
        x[i, j],
        x[i + 1, j],
        x[i - 1, j],
        x[i, j + 1],
        x[i, j - 1],
    )


def ising_residual(x, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Defect of the packing constraint at each interior black vertex.

    Squared value at the black vertex minus the four-white-neighbor ratio;
    zero on fields coming from circle packings.
    """
    x = np.asarray(x, float)
    w, h = x.shape
    out = np.full((w, h), np.nan)
    for i in range(1, w - 1):
        for j in range(1, h - 1):
            if (i + j) % 2:
                continue
            vals = _window(x, i, j)
            if not np.all(np.isfinite(vals)):
                continue
            xb, e1p, e1m, e2p, e2m = vals
            if e1p <= 0 or e1m <= 0:
                raise NonpositiveX(f"inverted value at a neighbor of {(i, j)}")
            out[i, j] = xb * xb - (1 + e2p) * (1 + e2m) / (
                (1 + 1 / e1p) * (1 + 1 / e1m)
            )
    return out


def _single_color_update(x, parity: int) -> np.ndarray:
    x = np.asarray(x, float)
    w, h = x.shape
    out = np.array(x)
    for i in range(w):
        for j in range(h):
            if (i + j) % 2 != parity:
                continue
            if not (0 < i < w - 1 and 0 < j < h - 1):
                out[i, j] = np.nan
                continue
            vals = _window(x, i, j)
            if not np.all(np.isfinite(vals)):
                out[i, j] = np.nan
                continue
            xv, e1p, e1m, e2p, e2m = vals
            if xv <= 0 or e1p <= 0 or e1m <= 0:
                raise NonpositiveX(f"inverted value at or next to {(i, j)}")
            out[i, j] = (1 + e2p) * (1 + e2m) / (
                xv * (1 + 1 / e1p) * (1 + 1 / e1m)
            )
    return out


def miq_update_black(x, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Field after sweeping the black circles: whites updated, blacks kept.

    Inverse of the old white value times the four-neighbor ratio; applying
    it twice gives back the input on the surviving interior whites.
    """
    return _single_color_update(x, 1)


def miq_update_white(x, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Field after sweeping the white circles: blacks updated, whites kept."""
    return _single_color_update(x, 0)


def isothermic_residual(x_white, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Second-order constraint coupling 16 white values around a black vertex.

    Black values are eliminated through the packing constraint (positive
    square roots), the white values are pushed through the black-sweep
    update, and the packing constraint is evaluated again on the updated
    field; the residual compares the two determinations of the squared
    black value.  Nonzero in general for plain packings, zero when the
    congruence behind the field is isothermic.
    """
    x = np.asarray(x_white, float)
    w, h = x.shape
    # squared black values from the four surrounding whites
    sq = np.full((w, h), np.nan)
    for i in range(1, w - 1):
        for j in range(1, h - 1):
            if (i + j) % 2:
                continue
            vals = _window(x, i, j)[1:]
            if not np.all(np.isfinite(vals)):
                continue
            e1p, e1m, e2p, e2m = vals
            if min(vals) <= 0:
                raise NonpositiveX(f"white value next to {(i, j)} not positive")
            sq[i, j] = (1 + e2p) * (1 + e2m) / ((1 + 1 / e1p) * (1 + 1 / e1m))
    s = np.sqrt(sq)
    # swept white values with the eliminated black values substituted in
    m = np.full((w, h), np.nan)
    for i in range(1, w - 1):
        for j in range(1, h - 1):
            if (i + j) % 2 == 0:
                continue
            vals = _window(s, i, j)
            if not (np.isfinite(x[i, j]) and np.all(np.isfinite(vals[1:]))):
                continue
            if x[i, j] <= 0:
                raise NonpositiveX(f"white value at {(i, j)} not positive")
            _, e1p, e1m, e2p, e2m = vals
            m[i, j] = (1 + e2p) * (1 + e2m) / (
                x[i, j] * (1 + 1 / e1p) * (1 + 1 / e1m)
            )
    out = np.full((w, h), np.nan)
    for i in range(1, w - 1):
        for j in range(1, h - 1):
            if (i + j) % 2:
                continue
            vals = _window(m, i, j)[1:]
            if not (np.isfinite(sq[i, j]) and np.all(np.isfinite(vals))):
                continue
            e1p, e1m, e2p, e2m = vals
            out[i, j] = sq[i, j] - (1 + e2p) * (1 + e2m) / (
                (1 + 1 / e1p) * (1 + 1 / e1m)
            )
    return out


def _base_plane_point(line, eps: float, scale: float) -> complex:
    d = line.dir
    if abs(d[2]) <= eps * float(np.max(np.abs(d))):
        raise PointAtInfinity("line runs parallel to the base plane")
    t = -line.base[2] / d[2]
    p = line.base + t * d
    return complex(p[0], p[1])


def conformal_x(cc: ContactCongruence, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Cross-ratio of the four base-plane feet of the ruling lines at a white.

    The white sphere carries the two contact lines of its NE and SW faces
    and, after sweeping the black circles, two replacement lines at the NW
    and SE faces; all four lie on the sphere in the same ruling family.
    Dropping them to the base plane gives four concyclic points whose
    complex cross-ratio is real and unchanged under sphere inversions of
    the ambient space.
    """
    swept = sweep_black(cc)
    g = cc.grid
    scale = max(cc.scale(), 1.0)
    out = np.full(g.vertex_shape, np.nan)
    for v in g.vertices():
        if g.is_black(v):
            continue
        i, j = v
        ne, nw, sw, se = (i, j), (i - 1, j), (i - 1, j - 1), (i, j - 1)
        nw_s, se_s = (nw[0] - 1, nw[1] - 1), (se[0] - 1, se[1] - 1)
        if not (g.has_face(ne) and g.has_face(sw)):
            continue
        if not (swept.grid.has_face(nw_s) and swept.grid.has_face(se_s)):
            continue
        lines = (
            cc.iso_line_at(ne),
            swept.iso_line_at(nw_s),
            cc.iso_line_at(sw),
            swept.iso_line_at(se_s),
        )
        z1, z2, z3, z4 = (_base_plane_point(l, eps, scale) for l in lines)
        num = (z1 - z2) * (z3 - z4)
        den = (z2 - z3) * (z4 - z1)
        if abs(den) <= (eps * scale) ** 2:
            raise DegenerateCrossRatio(f"coinciding feet around {(i, j)}")
        cr = num / den
        if abs(cr.imag) > 1e-6 * max(1.0, abs(cr.real)):
            raise DegenerateCrossRatio(f"feet around {(i, j)} are not concyclic")
        out[i, j] = cr.real
    return out
