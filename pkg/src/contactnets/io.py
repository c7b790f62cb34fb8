"""Self-describing on-disk documents for every net type.

One JSON document per object: a `schema` tag "contactnets/<kind>/<version>",
the grid dimensions, and dense per-field arrays nested row-major over
vertices (or faces).  Floats serialize through repr, which is shortest
round-trip in Python 3, so save/load is lossless at the bit level; NaN
holes are kept as bare NaN tokens, which json emits and accepts.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, SchemaMismatch, VersionMismatch
from .grid import QuadGrid
from .nets import (
    CirclePattern,
    CombinedNet,
    ConicalNet,
    ContactCongruence,
    CycloNet,
    CyclePattern,
    IncircularNet,
    SIsothermicNet,
)

VERSION = 1


@dataclass(frozen=True)
class XTable:
    """A vertex field of cross-ratio values plus the formula that made it."""

    grid: QuadGrid
    values: np.ndarray  # (w, h), NaN off the formula's domain
    formula: str = "plane"

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != self.grid.vertex_shape:
            raise IndexOutOfRange(
                f"expected {self.grid.vertex_shape} values, got {vals.shape}"
            )
        object.__setattr__(self, "values", vals)


# kind -> (class, field names in constructor order, string metadata fields)
_REGISTRY = {
    "conical-net": (ConicalNet, ("centers",), ()),
    "circle-pattern": (CirclePattern, ("centers", "radii", "points"), ()),
    "cycle-pattern": (
        CyclePattern,
        ("centers", "radii", "line_normal", "line_offset"),
        (),
    ),
    "contact-congruence": (
        ContactCongruence,
        ("centers", "rho", "iso_base", "iso_dir", "iso_ospan"),
        (),
    ),
    "cyclo-net": (
        CycloNet,
        ("points", "plane_base", "plane_s1", "plane_s2"),
        (),
    ),
    "incircular-net": (
        IncircularNet,
        ("black_centers", "incircle_centers", "incircle_radii"),
        (),
    ),
    "s-isothermic-net": (
        SIsothermicNet,
        (
            "white_centers",
            "white_rho",
            "circle_centers",
            "circle_radii",
            "circle_normals",
            "circle_offsets",
            "contacts",
        ),
        (),
    ),
    "combined-net": (CombinedNet, ("vertex_values", "face_values"), ()),
    "x-table": (XTable, ("values",), ("formula",)),
}

_KIND_OF = {cls: kind for kind, (cls, _, _) in _REGISTRY.items()}


def kind_of(obj) -> str:
    try:
        return _KIND_OF[type(obj)]
    except KeyError:
        raise SchemaMismatch(f"no document kind for {type(obj).__name__}")


def save(obj, path) -> None:
    kind = kind_of(obj)
    _, fields, meta = _REGISTRY[kind]
    doc = {
        "schema": f"contactnets/{kind}/{VERSION}",
        "width": obj.grid.width,
        "height": obj.grid.height,
        "fields": {
            name: np.asarray(getattr(obj, name)).tolist() for name in fields
        },
    }
    for name in meta:
        doc[name] = getattr(obj, name)
    with open(path, "w") as f:
        json.dump(doc, f, sort_keys=True, indent=1, allow_nan=True)
        f.write("\n")


def load(path):
    with open(path) as f:
        try:
            doc = json.load(f)
        except ValueError as exc:
            raise SchemaMismatch(f"not a net document: {exc}")
    if not isinstance(doc, dict) or not isinstance(doc.get("schema"), str):
        raise SchemaMismatch("missing schema tag")
    parts = doc["schema"].split("/")
    if len(parts) != 3 or parts[0] != "contactnets" or parts[1] not in _REGISTRY:
        raise SchemaMismatch(f"unrecognized schema {doc['schema']!r}")
    if parts[2] != str(VERSION):
        raise VersionMismatch(f"document version {parts[2]}, supported {VERSION}")
    cls, fields, meta = _REGISTRY[parts[1]]
    try:
        grid = QuadGrid(int(doc["width"]), int(doc["height"]))
        stored = doc["fields"]
        if set(stored) != set(fields):
            raise SchemaMismatch(
                f"field set {sorted(stored)} does not match {sorted(fields)}"
            )
        args = [np.asarray(stored[name], dtype=float) for name in fields]
        extra = {name: doc[name] for name in meta}
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaMismatch(f"malformed document: {exc}")
    try:
        return cls(grid, *args, **extra)
    except IndexOutOfRange as exc:
        raise SchemaMismatch(str(exc))
