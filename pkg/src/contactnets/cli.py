"""Command line front end.

Every subcommand reads and writes the JSON document format, so pipelines
compose: generate | lift | miquel | xvars | check | render.  Exit codes:
0 on success, 1 when a check suite exceeds its tolerance, 2 for usage
errors and inputs of the wrong kind.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io as cio
from .errors import GeometryError
from .isothermic import christoffel_dual, christoffel_dual_congruence
from .lift import (
    cyclographic_lift,
    lorentz_lift,
    project_circle_pattern,
)
from .lorentz import DEFAULT_EPS, make_iso_line
from .miquel import sweep_black, sweep_white
from .nets import (
    CirclePattern,
    CombinedNet,
    ConicalNet,
    ContactCongruence,
    CycloNet,
    IncircularNet,
)
from .packing import generate_grid, generate_isothermic, null_lift
from .render import render_svg
from .report import SUITES, suite_residuals, summarize, write_csv, write_figure
from .xvars import conformal_x, x_vars, x_vars_cyclo, x_vars_null


def _build_parser():
    top = argparse.ArgumentParser(
        prog="contactnets",
        description="circle patterns, incircular nets, touching-sphere congruences",
    )
    sub = top.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("generate", help="write a sample congruence")
    p.add_argument("kind", choices=("grid", "isothermic"))
    p.add_argument("--size", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("lift", help="lift a planar net to touching spheres")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--height", type=float, default=0.0)
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)

    p = sub.add_parser("project", help="project a congruence to its circle pattern")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("miquel", help="propagate one color through its Miquel spheres")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--color", choices=("black", "white"), required=True)

    p = sub.add_parser("dual", help="Christoffel dual of an isothermic net")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("xvars", help="cross-ratio table of a net")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument(
        "--formula", choices=("plane", "cyclo", "null", "conformal"), default="plane"
    )

    p = sub.add_parser("check", help="run a residual suite and print its table")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    p.add_argument("--report-dir", default=None)

    p = sub.add_parser("render", help="write an SVG drawing")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--companion", default=None, help="second net layered on top")
    p.add_argument("--size", type=float, default=640.0)
    return top


def _load(path):
    try:
        return cio.load(path)
    except OSError as e:
        raise GeometryError(f"cannot read {path}: {e}") from e


def _require(obj, kinds, what):
    if not isinstance(obj, kinds):
        raise GeometryError(f"{what} cannot use a {type(obj).__name__}")
    return obj


def _cmd_generate(args):
    if args.kind == "grid":
        _, cc = generate_grid(args.size, args.size)
    else:
        cc = generate_isothermic(args.seed, size=args.size)
    cio.save(cc, args.output)
    return 0


def _cmd_lift(args):
    obj = _load(args.input)
    if isinstance(obj, IncircularNet):
        cc = null_lift(obj, args.height, args.sign)
    elif isinstance(obj, CirclePattern):
        if args.height != 0.0:
            raise GeometryError("--height applies to incircular-net input only")
        fp = obj.points[0, 0]
        line0 = make_iso_line(
            np.array([fp[0], fp[1], 0.0]), np.array([1.0, 0.0, 1.0]), side=args.sign
        )
        cc = lorentz_lift(obj, (0, 0), line0)
    else:
        raise GeometryError(f"lift cannot use a {type(obj).__name__}")
    cio.save(cc, args.output)
    return 0


def _cmd_project(args):
    cc = _require(_load(args.input), ContactCongruence, "project")
    cio.save(project_circle_pattern(cc), args.output)
    return 0


def _cmd_miquel(args):
    cc = _require(_load(args.input), ContactCongruence, "miquel")
    out = sweep_black(cc) if args.color == "black" else sweep_white(cc)
    cio.save(out, args.output)
    return 0


def _cmd_dual(args):
    obj = _load(args.input)
    if isinstance(obj, ContactCongruence):
        out = christoffel_dual_congruence(obj)
    elif isinstance(obj, CombinedNet):
        out, _ = christoffel_dual(obj)
    else:
        raise GeometryError(f"dual cannot use a {type(obj).__name__}")
    cio.save(out, args.output)
    return 0


def _cmd_xvars(args):
    obj = _load(args.input)
    if args.formula == "plane":
        if isinstance(obj, ContactCongruence):
            obj = project_circle_pattern(obj)
        if isinstance(obj, CirclePattern):
            obj = obj.conical()
        x = x_vars(_require(obj, ConicalNet, "xvars --formula plane"))
    elif args.formula == "cyclo":
        if isinstance(obj, ContactCongruence):
            obj = cyclographic_lift(obj)
        x = x_vars_cyclo(_require(obj, CycloNet, "xvars --formula cyclo"))
    elif args.formula == "null":
        x = x_vars_null(_require(obj, ContactCongruence, "xvars --formula null"))
    else:
        x = conformal_x(_require(obj, ContactCongruence, "xvars --formula conformal"))
    grid = obj.grid
    cio.save(cio.XTable(grid, x, formula=args.formula), args.output)
    return 0


def _cmd_check(args):
    obj = _load(args.input)
    tables = suite_residuals(args.suite, obj, eps=args.eps)
    rows = summarize(tables)
    print(f"suite {args.suite}  tol {args.tol:.3e}")
    print("check,max,mean")
    worst = 0.0
    for name, mx, mean in rows:
        print("%s,%.6e,%.6e" % (name, mx, mean))
        worst = max(worst, mx)
    if args.report_dir is not None:
        import os

        os.makedirs(args.report_dir, exist_ok=True)
        base = os.path.join(args.report_dir, args.suite)
        write_csv(tables, base + "-residuals.csv")
        write_figure(tables, base + "-residuals.png", title=f"suite {args.suite}")
    if worst > args.tol:
        print(f"FAIL worst {worst:.6e} over tol {args.tol:.3e}")
        return 1
    print(f"PASS worst {worst:.6e}")
    return 0


def _cmd_render(args):
    obj = _load(args.input)
    companion = _load(args.companion) if args.companion else None
    svg = render_svg(obj, companion=companion, size=args.size)
    with open(args.output, "w") as fh:
        fh.write(svg)
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "lift": _cmd_lift,
    "project": _cmd_project,
    "miquel": _cmd_miquel,
    "dual": _cmd_dual,
    "xvars": _cmd_xvars,
    "check": _cmd_check,
    "render": _cmd_render,
}


def cli(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(cli())


if __name__ == "__main__":
    main()
