"""Combinatorics of the bipartite square-grid patch.

Vertices live on [0,w) x [0,h); vertex (i,j) is black when i+j is even.
Faces are unit squares indexed by their lower-left vertex, so faces live on
[0,w-1) x [0,h-1).  Edges join horizontal or vertical lattice neighbors and
always connect the two colors.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange


@dataclass(frozen=True)
class QuadGrid:
    width: int
    height: int

    def __post_init__(self):
        if self.width < 2 or self.height < 2:
            raise IndexOutOfRange("grid patch needs at least 2x2 vertices")

    # -- index sets ----------------------------------------------------------

    @property
    def vertex_shape(self):
        return (self.width, self.height)

    @property
    def face_shape(self):
        return (self.width - 1, self.height - 1)

    def vertices(self):
        for i in range(self.width):
            for j in range(self.height):
                yield (i, j)

    def faces(self):
        for i in range(self.width - 1):
            for j in range(self.height - 1):
                yield (i, j)

    def has_vertex(self, v) -> bool:
        i, j = v
        return 0 <= i < self.width and 0 <= j < self.height

    def has_face(self, f) -> bool:
        i, j = f
        return 0 <= i < self.width - 1 and 0 <= j < self.height - 1

    def check_vertex(self, v):
        if not self.has_vertex(v):
            raise IndexOutOfRange(f"vertex {v} outside {self.vertex_shape}")

    def check_face(self, f):
        if not self.has_face(f):
            raise IndexOutOfRange(f"face {f} outside {self.face_shape}")

    # -- structure -----------------------------------------------------------

    @staticmethod
    def is_black(v) -> bool:
        return (v[0] + v[1]) % 2 == 0

    def black_mask(self) -> np.ndarray:
        ii, jj = np.meshgrid(
            np.arange(self.width), np.arange(self.height), indexing="ij"
        )
        return (ii + jj) % 2 == 0

    def neighbors(self, v):
        """Lattice neighbors of v inside the patch."""
        self.check_vertex(v)
        i, j = v
        out = []
        for di, dj in ((1, 0), (0, 1), (-1, 0), (0, -1)):
            if self.has_vertex((i + di, j + dj)):
                out.append((i + di, j + dj))
        return out

    def star(self, v):
        """The four neighbors (east, north, west, south); requires interior."""
        i, j = v
        quad = [(i + 1, j), (i, j + 1), (i - 1, j), (i, j - 1)]
        for n in quad:
            self.check_vertex(n)
        return quad

    def is_interior_vertex(self, v, ring: int = 1) -> bool:
        i, j = v
        return (
            ring <= i < self.width - ring and ring <= j < self.height - ring
        )

    def interior_vertices(self, ring: int = 1):
        for i in range(ring, self.width - ring):
            for j in range(ring, self.height - ring):
                yield (i, j)

    def face_vertices(self, f):
        """Corners counterclockwise from the lower left; colors alternate."""
        self.check_face(f)
        i, j = f
        return [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]

    def incident_faces(self, v):
        self.check_vertex(v)
        i, j = v
        return [
            f
            for f in ((i - 1, j - 1), (i, j - 1), (i - 1, j), (i, j))
            if self.has_face(f)
        ]

    def faces_around_vertex(self, v):
        """All four incident faces in cyclic order (NE, NW, SW, SE)."""
        i, j = v
        quad = [(i, j), (i - 1, j), (i - 1, j - 1), (i, j - 1)]
        for f in quad:
            self.check_face(f)
        return quad

    def black_diagonal(self, f):
        """The two black corners of a face, lower one first."""
        i, j = f
        if (i + j) % 2 == 0:
            return (i, j), (i + 1, j + 1)
        return (i + 1, j), (i, j + 1)

    def white_diagonal(self, f):
        i, j = f
        if (i + j) % 2 == 0:
            return (i + 1, j), (i, j + 1)
        return (i, j), (i + 1, j + 1)

    # -- edges and duality ---------------------------------------------------

    def edges(self):
        for i in range(self.width):
            for j in range(self.height):
                if i + 1 < self.width:
                    yield ((i, j), (i + 1, j))
                if j + 1 < self.height:
                    yield ((i, j), (i, j + 1))

    def dual_edge(self, e):
        """Faces flanking an edge: (left, right) of the direction v1 -> v2."""
        v1, v2 = e
        self.check_vertex(v1)
        self.check_vertex(v2)
        i, j = v1
        di, dj = v2[0] - v1[0], v2[1] - v1[1]
        if (abs(di), abs(dj)) not in ((0, 1), (1, 0)):
            raise IndexOutOfRange(f"{e} is not a lattice edge")
        if di < 0 or dj < 0:
            left, right = self.dual_edge((v2, v1))
            return right, left
        if di == 1:
            left, right = (i, j), (i, j - 1)
        else:
            left, right = (i - 1, j), (i, j)
        return (
            left if self.has_face(left) else None,
            right if self.has_face(right) else None,
        )

    def primal_edge(self, f1, f2):
        """Shared edge of two adjacent faces, oriented so f1 is on its left."""
        self.check_face(f1)
        self.check_face(f2)
        di, dj = f2[0] - f1[0], f2[1] - f1[1]
        i, j = f2
        if (di, dj) == (1, 0):
            return ((i, j), (i, j + 1))
        if (di, dj) == (-1, 0):
            return ((f1[0], f1[1] + 1), (f1[0], f1[1]))
        if (di, dj) == (0, 1):
            return ((i + 1, j), (i, j))
        if (di, dj) == (0, -1):
            return ((f1[0], f1[1]), (f1[0] + 1, f1[1]))
        raise IndexOutOfRange(f"faces {f1}, {f2} are not adjacent")

    def adjacent_faces(self, f):
        self.check_face(f)
        i, j = f
        return [
            g
            for g in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1))
            if self.has_face(g)
        ]

    def dual_tree(self, root):
        """Row-major breadth-first spanning tree of the dual graph.

        Returns (order, parent): `order` lists faces in visit order starting
        at root, `parent[f]` is the predecessor face (None for the root).
        """
        self.check_face(root)
        from collections import deque

        parent = {root: None}
        order = [root]
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for g in sorted(self.adjacent_faces(f)):
                if g not in parent:
                    parent[g] = f
                    order.append(g)
                    queue.append(g)
        return order, parent


# -- bounds-checked fields ---------------------------------------------------

class _Field:
    kind = "vertex"

    def __init__(self, grid: QuadGrid, data: np.ndarray):
        data = np.asarray(data)
        if data.shape[:2] != self._shape(grid):
            raise IndexOutOfRange(
                f"{self.kind} field shape {data.shape[:2]} != {self._shape(grid)}"
            )
        self.grid = grid
        self.data = data

    def _shape(self, grid):
        return grid.vertex_shape if self.kind == "vertex" else grid.face_shape

    def at(self, idx):
        i, j = idx
        if not (0 <= i < self.data.shape[0] and 0 <= j < self.data.shape[1]):
            raise IndexOutOfRange(f"{self.kind} index {idx} outside {self.data.shape[:2]}")
        return self.data[i, j]

    __getitem__ = at

    def set(self, idx, value):
        self.at(idx)  # bounds check
        self.data[idx[0], idx[1]] = value


class VertexField(_Field):
    kind = "vertex"


class FaceField(_Field):
    kind = "face"
