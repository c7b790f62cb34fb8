"""Plain SVG 1.1 documents for planar patterns and incircular nets.

Hand-rolled markup, no external templating: every coordinate goes through
one %.6f format, so a fixed input renders to the identical byte sequence on
every run.  Geometry is grouped into layers (circles, tangent lines,
centers, face points, quads, incircles) so downstream tools can toggle
them.  The vertical axis is flipped into screen orientation.
"""
from __future__ import annotations

import numpy as np

from .errors import EmptyNet
from .nets import CirclePattern, CyclePattern, IncircularNet

_STYLE = {
    "circle": 'fill="none" stroke="#20639b" stroke-width="%.6f"',
    "circle2": 'fill="none" stroke="#b05c20" stroke-width="%.6f"',
    "line": 'stroke="#3caea3" stroke-width="%.6f"',
    "center": 'fill="#173f5f" stroke="none"',
    "point": 'fill="#ed553b" stroke="none"',
    "quad": 'fill="none" stroke="#173f5f" stroke-width="%.6f"',
    "quad2": 'fill="none" stroke="#b05c20" stroke-width="%.6f"',
    "incircle": 'fill="none" stroke="#3caea3" stroke-width="%.6f"',
}


def _f(x: float) -> str:
    s = "%.6f" % float(x)
    return "-0.000000" if s == "-0.000000" else s  # keep the form stable


class _Canvas:
    def __init__(self, pts_and_radii, size, margin):
        lo = np.array([np.inf, np.inf])
        hi = np.array([-np.inf, -np.inf])
        for p, r in pts_and_radii:
            p = np.asarray(p, float)
            if not np.all(np.isfinite(p)) or not np.isfinite(r):
                continue
            lo = np.minimum(lo, p - abs(r))
            hi = np.maximum(hi, p + abs(r))
        if not np.all(np.isfinite(lo)):
            raise EmptyNet("nothing finite to draw")
        span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-9))
        pad = margin * span
        self.lo = lo - pad
        self.k = size / (span + 2 * pad)
        self.size = size
        self.mid_y = (lo[1] + hi[1]) / 2.0

    def xy(self, p):
        x = (p[0] - self.lo[0]) * self.k
        y = self.size - (p[1] - self.lo[1]) * self.k
        return _f(x), _f(y)

    def r(self, r):
        return _f(abs(r) * self.k)


def _group(name, rows):
    body = "\n".join(rows)
    return f'<g id="{name}">\n{body}\n</g>' if rows else f'<g id="{name}"/>'


def _document(canvas, groups):
    s = _f(canvas.size)
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{s}" height="{s}" viewBox="0 0 {s} {s}">'
    )
    return head + "\n" + "\n".join(groups) + "\n</svg>\n"


def _circle_rows(canvas, centers, radii, style, width):
    rows = []
    w, h = radii.shape
    for i in range(w):
        for j in range(h):
            c = centers[i, j]
            r = radii[i, j]
            if not (np.all(np.isfinite(c)) and np.isfinite(r)):
                continue
            x, y = canvas.xy(c)
            rows.append(
                f'<circle cx="{x}" cy="{y}" r="{canvas.r(r)}" '
                + (_STYLE[style] % width)
                + "/>"
            )
    return rows


def _dot_rows(canvas, pts, style, radius):
    rows = []
    flat = pts.reshape(-1, 2)
    for c in flat:
        if not np.all(np.isfinite(c)):
            continue
        x, y = canvas.xy(c)
        rows.append(
            f'<circle cx="{x}" cy="{y}" r="{_f(radius)}" ' + _STYLE[style] + "/>"
        )
    return rows


def _pattern_groups(canvas, p, width, dot):
    groups = [
        _group("circles", _circle_rows(canvas, p.centers, p.radii, "circle", width)),
        _group("centers", _dot_rows(canvas, p.centers, "center", dot)),
    ]
    if isinstance(p, CirclePattern):
        groups.append(_group("face-points", _dot_rows(canvas, p.points, "point", dot)))
    else:
        rows = []
        w, h = p.line_offset.shape
        span = canvas.size / canvas.k
        for i in range(w):
            for j in range(h):
                n = p.line_normal[i, j]
                off = p.line_offset[i, j]
                if not (np.all(np.isfinite(n)) and np.isfinite(off)):
                    continue
                mid = np.array([canvas.lo[0] + span / 2, canvas.mid_y])
                foot = mid + (off - n @ mid) * n
                t = np.array([-n[1], n[0]])
                a, b = foot - span * t, foot + span * t
                x1, y1 = canvas.xy(a)
                x2, y2 = canvas.xy(b)
                rows.append(
                    f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                    + (_STYLE["line"] % (0.7 * width))
                    + "/>"
                )
        groups.append(_group("tangent-lines", rows))
    return groups


def _incircular_groups(canvas, net, width, dot, tag=""):
    quad_rows = []
    grid = net.grid
    for v in grid.vertices():
        if not grid.is_black(v):
            continue
        p = net.black_centers[v[0], v[1]]
        if not np.all(np.isfinite(p)):
            continue
        for step in ((1, 1), (1, -1)):
            u = (v[0] + step[0], v[1] + step[1])
            if not grid.has_vertex(u):
                continue
            q = net.black_centers[u[0], u[1]]
            if not np.all(np.isfinite(q)):
                continue
            x1, y1 = canvas.xy(p)
            x2, y2 = canvas.xy(q)
            quad_rows.append(
                f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                + (_STYLE["quad2" if tag else "quad"] % width)
                + "/>"
            )
    return [
        _group("quads" + tag, quad_rows),
        _group("centers" + tag, _dot_rows(canvas, net.black_centers, "center", dot)),
    ]


def render_svg(p, companion=None, size: float = 640.0, margin: float = 0.05) -> str:
    """SVG document for a pattern or incircular net.

    companion overlays a second incircular net sharing the incircles, drawn
    in a contrasting stroke with the incircles emitted once.
    """
    extents = []
    nets = [p] + ([companion] if companion is not None else [])
    for n in nets:
        if isinstance(n, (CirclePattern, CyclePattern)):
            for (i, j) in np.ndindex(n.radii.shape):
                extents.append((n.centers[i, j], n.radii[i, j]))
        elif isinstance(n, IncircularNet):
            for (i, j) in np.ndindex(n.incircle_radii.shape):
                extents.append((n.black_centers[i, j], 0.0))
                extents.append((n.incircle_centers[i, j], n.incircle_radii[i, j]))
        else:
            raise EmptyNet(f"cannot render a {type(n).__name__}")
    canvas = _Canvas(extents, size, margin)
    width = max(size / 640.0, 0.5)
    dot = 2.5 * width

    groups = []
    if isinstance(p, IncircularNet):
        groups += _incircular_groups(canvas, p, width, dot)
        if companion is not None:
            groups += _incircular_groups(canvas, companion, width, dot, tag="-companion")
        groups.append(
            _group(
                "incircles",
                _circle_rows(
                    canvas, p.incircle_centers, p.incircle_radii, "incircle", width
                ),
            )
        )
    else:
        groups += _pattern_groups(canvas, p, width, dot)
        if companion is not None:
            groups.append(
                _group(
                    "circles-companion",
                    _circle_rows(
                        canvas, companion.centers, companion.radii, "circle2", width
                    ),
                )
            )
    return _document(canvas, groups)
