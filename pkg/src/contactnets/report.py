"""Residual suites with delimited and graphical reports.

A suite turns one net into named tables of nonnegative residuals, every
table a NaN-holed 2D array over vertices or faces.  The writers emit a
CSV in long form and a PNG heat map per suite; the CSV is the record,
the figure is for eyeballing where a violation sits on the grid.
"""
from __future__ import annotations

import numpy as np

from .errors import SchemaMismatch
from .io import XTable
from .isothermic import isothermic_residuals
from .lift import project_circle_pattern
from .lorentz import (
    DEFAULT_EPS,
    iso_line_contact_residual,
    oriented_contact_residual,
)
from .nets import CirclePattern, ConicalNet, ContactCongruence, CycloNet
from .xvars import ising_residual, isothermic_residual, x_vars, x_vars_cyclo

SUITES = ("congruence", "null", "isothermic", "ising", "isothermic-subvariety")


def _line_incidence_table(cc):
    g = cc.grid
    out = np.full(g.face_shape, np.nan)
    for f in g.faces():
        line = cc.iso_line_at(f)
        out[f[0], f[1]] = max(
            iso_line_contact_residual(cc.sphere_at(v), line)
            for v in g.face_vertices(f)
        )
    return out


def _contact_table(cc):
    g = cc.grid
    out = np.full(g.vertex_shape, 0.0)
    for v1, v2 in g.edges():
        r = abs(oriented_contact_residual(cc.sphere_at(v1), cc.sphere_at(v2)))
        out[v1[0], v1[1]] = max(out[v1[0], v1[1]], r)
        out[v2[0], v2[1]] = max(out[v2[0], v2[1]], r)
    return out


def _x_of(obj, eps):
    if isinstance(obj, XTable):
        return obj.values
    if isinstance(obj, ContactCongruence):
        obj = project_circle_pattern(obj)
    if isinstance(obj, CirclePattern):
        obj = obj.conical()
    if isinstance(obj, ConicalNet):
        return x_vars(obj, eps=eps)
    if isinstance(obj, CycloNet):
        return x_vars_cyclo(obj, eps=eps)
    raise SchemaMismatch(
        f"no cross-ratio table for a {type(obj).__name__}"
    )


def suite_residuals(suite, obj, eps: float = DEFAULT_EPS):
    """Named residual tables for one check suite on one net."""
    if suite in ("congruence", "null", "isothermic"):
        if not isinstance(obj, ContactCongruence):
            raise SchemaMismatch(
                f"suite {suite} needs a sphere congruence, got {type(obj).__name__}"
            )
    if suite == "congruence":
        return {
            "sphere-line-incidence": _line_incidence_table(obj),
            "oriented-contact": _contact_table(obj),
        }
    if suite == "null":
        black = np.where(obj.grid.black_mask(), np.abs(obj.rho), np.nan)
        return {
            "black-radius": black,
            "oriented-contact": _contact_table(obj),
        }
    if suite == "isothermic":
        plane_res, margin = isothermic_residuals(obj, eps=eps)
        return {
            "white-coplanarity": plane_res,
            "spacelike-violation": np.maximum(-margin, 0.0),
        }
    if suite == "ising":
        return {"ising-identity": np.abs(ising_residual(_x_of(obj, eps), eps=eps))}
    if suite == "isothermic-subvariety":
        return {
            "white-multiratio": np.abs(isothermic_residual(_x_of(obj, eps), eps=eps))
        }
    raise SchemaMismatch(f"unknown suite {suite!r}")


def summarize(tables):
    """[(name, max, mean per finite entry)], vacuous tables scoring zero."""
    rows = []
    for name, arr in tables.items():
        finite = np.asarray(arr)[np.isfinite(arr)]
        if finite.size == 0:
            rows.append((name, 0.0, 0.0))
        else:
            rows.append((name, float(np.max(finite)), float(np.mean(finite))))
    return rows


def write_csv(tables, path):
    lines = ["check,i,j,residual"]
    for name, arr in tables.items():
        arr = np.asarray(arr)
        for (i, j) in np.ndindex(arr.shape):
            v = arr[i, j]
            if np.isfinite(v):
                lines.append("%s,%d,%d,%.17g" % (name, i, j, v))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_figure(tables, path, title=""):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    n = len(tables)
    fig, axes = plt.subplots(1, n, figsize=(4.6 * n, 4.2), squeeze=False)
    for ax, (name, arr) in zip(axes[0], tables.items()):
        arr = np.asarray(arr, float)
        im = ax.imshow(arr.T, origin="lower", cmap="viridis", interpolation="nearest")
        fig.colorbar(im, ax=ax, shrink=0.8)
        finite = arr[np.isfinite(arr)]
        worst = float(np.max(finite)) if finite.size else 0.0
        ax.set_title(f"{name}\nmax {worst:.3e}", fontsize=9)
        ax.set_xlabel("i")
        ax.set_ylabel("j")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
