"""Dense array-backed net types shared by the whole package.

Every net couples a QuadGrid with float64 arrays indexed (i, j, ...).  Fields
defined only on one color class keep the full dense shape and carry NaN at
the other color; masks come from QuadGrid.black_mask().  Accessors wrap rows
into the value types from the metric kernel.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import EmptyNet, IndexOutOfRange
from .grid import QuadGrid
from .lorentz import OrientedIsoLine, OrientedSphere, SpacelikeCircle


def _as_field(grid, data, shape_tail, kind="vertex"):
    data = np.asarray(data, dtype=float)
    base = grid.vertex_shape if kind == "vertex" else grid.face_shape
    want = base + shape_tail
    if data.shape != want:
        raise IndexOutOfRange(f"expected array of shape {want}, got {data.shape}")
    return data


def _spread(*arrays) -> float:
    """Scale of a configuration: largest coordinate spread over all inputs."""
    lo, hi = np.inf, -np.inf
    for a in arrays:
        a = np.asarray(a, dtype=float)
        finite = a[np.isfinite(a)]
        if finite.size:
            lo = min(lo, float(finite.min()))
            hi = max(hi, float(finite.max()))
    if not np.isfinite(lo):
        raise EmptyNet("no finite entries to measure")
    return max(hi - lo, 1.0)


@dataclass(frozen=True)
class ConicalNet:
    """Planar quad net of circumscribed quads: just the vertex positions."""

    grid: QuadGrid
    centers: np.ndarray  # (w, h, 2)

    def __post_init__(self):
        object.__setattr__(
            self, "centers", _as_field(self.grid, self.centers, (2,))
        )

    def scale(self) -> float:
        return _spread(self.centers)


@dataclass(frozen=True)
class CirclePattern:
    """Unoriented circles at vertices plus one point per face."""

    grid: QuadGrid
    centers: np.ndarray  # (w, h, 2)
    radii: np.ndarray  # (w, h), >= 0
    points: np.ndarray  # (w-1, h-1, 2)

    def __post_init__(self):
        object.__setattr__(self, "centers", _as_field(self.grid, self.centers, (2,)))
        object.__setattr__(self, "radii", _as_field(self.grid, self.radii, ()))
        object.__setattr__(
            self, "points", _as_field(self.grid, self.points, (2,), kind="face")
        )

    def conical(self) -> ConicalNet:
        return ConicalNet(self.grid, self.centers.copy())

    def scale(self) -> float:
        return _spread(self.centers, self.points)


@dataclass(frozen=True)
class CyclePattern:
    """Signed circles at vertices plus an oriented line per face.

    Lines are stored by unit normal (w-1, h-1, 2) and offset (w-1, h-1):
    the line is {p : n . p = offset}, oriented so n points to its left.
    """

    grid: QuadGrid
    centers: np.ndarray
    radii: np.ndarray  # signed
    line_normal: np.ndarray
    line_offset: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "centers", _as_field(self.grid, self.centers, (2,)))
        object.__setattr__(self, "radii", _as_field(self.grid, self.radii, ()))
        object.__setattr__(
            self, "line_normal", _as_field(self.grid, self.line_normal, (2,), "face")
        )
        object.__setattr__(
            self, "line_offset", _as_field(self.grid, self.line_offset, (), "face")
        )

    def conical(self) -> ConicalNet:
        return ConicalNet(self.grid, self.centers.copy())

    def scale(self) -> float:
        return _spread(self.centers, np.abs(self.radii))


@dataclass(frozen=True)
class ContactCongruence:
    """Oriented spheres at vertices, isotropic contact lines at faces."""

    grid: QuadGrid
    centers: np.ndarray  # (w, h, 3)
    rho: np.ndarray  # (w, h) signed
    iso_base: np.ndarray  # (w-1, h-1, 3)
    iso_dir: np.ndarray  # (w-1, h-1, 3)
    iso_ospan: np.ndarray  # (w-1, h-1, 4)

    def __post_init__(self):
        object.__setattr__(self, "centers", _as_field(self.grid, self.centers, (3,)))
        object.__setattr__(self, "rho", _as_field(self.grid, self.rho, ()))
        object.__setattr__(
            self, "iso_base", _as_field(self.grid, self.iso_base, (3,), "face")
        )
        object.__setattr__(
            self, "iso_dir", _as_field(self.grid, self.iso_dir, (3,), "face")
        )
        object.__setattr__(
            self, "iso_ospan", _as_field(self.grid, self.iso_ospan, (4,), "face")
        )

    def sphere_at(self, v) -> OrientedSphere:
        self.grid.check_vertex(v)
        return OrientedSphere(self.centers[v[0], v[1]], float(self.rho[v[0], v[1]]))

    def iso_line_at(self, f) -> OrientedIsoLine:
        self.grid.check_face(f)
        i, j = f
        return OrientedIsoLine(
            self.iso_base[i, j], self.iso_dir[i, j], self.iso_ospan[i, j]
        )

    def face_spheres(self, f):
        return [self.sphere_at(v) for v in self.grid.face_vertices(f)]

    def subgrid(self, i0, j0, w, h) -> "ContactCongruence":
        if i0 < 0 or j0 < 0 or i0 + w > self.grid.width or j0 + h > self.grid.height:
            raise IndexOutOfRange("subgrid window out of bounds")
        return ContactCongruence(
            QuadGrid(w, h),
            self.centers[i0 : i0 + w, j0 : j0 + h].copy(),
            self.rho[i0 : i0 + w, j0 : j0 + h].copy(),
            self.iso_base[i0 : i0 + w - 1, j0 : j0 + h - 1].copy(),
            self.iso_dir[i0 : i0 + w - 1, j0 : j0 + h - 1].copy(),
            self.iso_ospan[i0 : i0 + w - 1, j0 : j0 + h - 1].copy(),
        )

    def scale(self) -> float:
        return _spread(self.centers, np.abs(self.rho))

    def with_spheres(self, centers, rho) -> "ContactCongruence":
        return replace(self, centers=np.asarray(centers, float), rho=np.asarray(rho, float))


@dataclass(frozen=True)
class CycloNet:
    """Vertices lifted to split-signature 4-space, isotropic face planes.

    A face plane is stored by a base point and two spanning directions;
    every plane here is totally isotropic for the ++-- form.
    """

    grid: QuadGrid
    points: np.ndarray  # (w, h, 4)
    plane_base: np.ndarray  # (w-1, h-1, 4)
    plane_s1: np.ndarray  # (w-1, h-1, 4)
    plane_s2: np.ndarray  # (w-1, h-1, 4)

    def __post_init__(self):
        object.__setattr__(self, "points", _as_field(self.grid, self.points, (4,)))
        for name in ("plane_base", "plane_s1", "plane_s2"):
            object.__setattr__(
                self, name, _as_field(self.grid, getattr(self, name), (4,), "face")
            )

    def scale(self) -> float:
        return _spread(self.points)


@dataclass(frozen=True)
class IncircularNet:
    """Black-vertex points whose quads admit inscribed circles.

    black_centers carries NaN rows at white vertices; incircle data lives at
    white vertices (the quad of surrounding blacks) and is NaN elsewhere.
    """

    grid: QuadGrid
    black_centers: np.ndarray  # (w, h, 2), NaN at whites
    incircle_centers: np.ndarray  # (w, h, 2), NaN at blacks and boundary
    incircle_radii: np.ndarray  # (w, h), NaN likewise

    def __post_init__(self):
        object.__setattr__(
            self, "black_centers", _as_field(self.grid, self.black_centers, (2,))
        )
        object.__setattr__(
            self,
            "incircle_centers",
            _as_field(self.grid, self.incircle_centers, (2,)),
        )
        object.__setattr__(
            self, "incircle_radii", _as_field(self.grid, self.incircle_radii, ())
        )

    def scale(self) -> float:
        return _spread(self.black_centers)


@dataclass(frozen=True)
class SIsothermicNet:
    """Alternating spheres and circles, tangent along shared contact points.

    White vertices carry oriented spheres (NaN at blacks); black vertices
    carry spacelike circles stored center/radius/normal/offset (NaN at
    whites); each face carries the point where its two white spheres touch,
    which also lies on both incident circles.
    """

    grid: QuadGrid
    white_centers: np.ndarray  # (w, h, 3), NaN at blacks
    white_rho: np.ndarray  # (w, h), NaN at blacks
    circle_centers: np.ndarray  # (w, h, 3), NaN at whites
    circle_radii: np.ndarray  # (w, h), NaN at whites
    circle_normals: np.ndarray  # (w, h, 3), NaN at whites
    circle_offsets: np.ndarray  # (w, h), NaN at whites
    contacts: np.ndarray  # (w-1, h-1, 3)

    def __post_init__(self):
        object.__setattr__(
            self, "white_centers", _as_field(self.grid, self.white_centers, (3,))
        )
        object.__setattr__(self, "white_rho", _as_field(self.grid, self.white_rho, ()))
        object.__setattr__(
            self, "circle_centers", _as_field(self.grid, self.circle_centers, (3,))
        )
        object.__setattr__(
            self, "circle_radii", _as_field(self.grid, self.circle_radii, ())
        )
        object.__setattr__(
            self, "circle_normals", _as_field(self.grid, self.circle_normals, (3,))
        )
        object.__setattr__(
            self, "circle_offsets", _as_field(self.grid, self.circle_offsets, ())
        )
        object.__setattr__(
            self, "contacts", _as_field(self.grid, self.contacts, (3,), kind="face")
        )

    def sphere_at(self, v) -> OrientedSphere:
        self.grid.check_vertex(v)
        if self.grid.is_black(v):
            raise IndexOutOfRange(f"{v} is a circle vertex, not a sphere vertex")
        return OrientedSphere(
            self.white_centers[v[0], v[1]], float(self.white_rho[v[0], v[1]])
        )

    def circle_at(self, v) -> SpacelikeCircle:
        self.grid.check_vertex(v)
        if not self.grid.is_black(v):
            raise IndexOutOfRange(f"{v} is a sphere vertex, not a circle vertex")
        i, j = v
        return SpacelikeCircle(
            self.circle_centers[i, j],
            float(self.circle_radii[i, j]),
            self.circle_normals[i, j],
            float(self.circle_offsets[i, j]),
        )

    def scale(self) -> float:
        return _spread(self.white_centers, self.circle_centers)


@dataclass(frozen=True)
class CombinedNet:
    """Values on the union lattice of vertices and faces, rotated 45 degrees.

    A vertex (i, j) of the source grid sits at combined coordinates
    (i + j, j - i); a face (i, j) sits at (i + j + 1, j - i).  Quads of the
    combined lattice correspond to source edges.  Values are stored in the
    source indexing: vertex_values over the vertex grid, face_values over
    the face grid, each with a trailing value dimension.
    """

    grid: QuadGrid
    vertex_values: np.ndarray  # (w, h, k)
    face_values: np.ndarray  # (w-1, h-1, k)

    def __post_init__(self):
        vv = np.asarray(self.vertex_values, float)
        fv = np.asarray(self.face_values, float)
        if vv.ndim != 3 or fv.ndim != 3 or vv.shape[2] != fv.shape[2]:
            raise IndexOutOfRange("vertex and face values need matching depth")
        object.__setattr__(
            self, "vertex_values", _as_field(self.grid, vv, (vv.shape[2],))
        )
        object.__setattr__(
            self, "face_values", _as_field(self.grid, fv, (fv.shape[2],), "face")
        )

    @staticmethod
    def vertex_site(v):
        return (v[0] + v[1], v[1] - v[0])

    @staticmethod
    def face_site(f):
        return (f[0] + f[1] + 1, f[1] - f[0])

    def value_at_vertex(self, v):
        self.grid.check_vertex(v)
        return self.vertex_values[v[0], v[1]]

    def value_at_face(self, f):
        self.grid.check_face(f)
        return self.face_values[f[0], f[1]]

    def quads(self):
        """Combined-lattice quads, one per source edge.

        Yields (v, f_left, v2, f_right) with v -> v2 the source edge and the
        two flanking faces; skips edges missing a flanking face.
        """
        for e in self.grid.edges():
            left, right = self.grid.dual_edge(e)
            if left is None or right is None:
                continue
            yield e[0], left, e[1], right

    def scale(self) -> float:
        return _spread(self.vertex_values, self.face_values)
