"""End-to-end runs of the command line, driven through cli()."""
import json
import os

import numpy as np
import pytest

from contactnets import io as cio
from contactnets.cli import cli
from contactnets.packing import generate_grid

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture()
def grid_doc(tmp_path):
    path = tmp_path / "grid.json"
    assert cli(["generate", "grid", "--size", "5", "-o", str(path)]) == 0
    return str(path)


def test_generate_then_check_isothermic_passes(grid_doc):
    assert cli(["check", "-i", grid_doc, "--suite", "isothermic"]) == 0


def test_generate_isothermic_then_check(tmp_path):
    path = str(tmp_path / "iso.json")
    assert cli(["generate", "isothermic", "--size", "7", "--seed", "4", "-o", path]) == 0
    assert cli(["check", "-i", path, "--suite", "isothermic"]) == 0
    assert cli(["check", "-i", path, "--suite", "congruence"]) == 0


def test_white_sweep_of_null_congruence_is_identity_bytes(grid_doc, tmp_path):
    out = str(tmp_path / "swept.json")
    assert cli(["miquel", "-i", grid_doc, "-o", out, "--color", "white"]) == 0
    with open(grid_doc, "rb") as a, open(out, "rb") as b:
        assert a.read() == b.read()


def test_black_sweep_shrinks(grid_doc, tmp_path):
    out = str(tmp_path / "swept.json")
    assert cli(["miquel", "-i", grid_doc, "-o", out, "--color", "black"]) == 0
    cc = cio.load(out)
    assert cc.grid.vertex_shape == (3, 3)


def test_xvars_plane_and_null_agree(grid_doc, tmp_path):
    pp, pn = str(tmp_path / "xp.json"), str(tmp_path / "xn.json")
    assert cli(["xvars", "-i", grid_doc, "-o", pp, "--formula", "plane"]) == 0
    assert cli(["xvars", "-i", grid_doc, "-o", pn, "--formula", "null"]) == 0
    xp = np.array(json.load(open(pp))["fields"]["values"], float)
    xn = np.array(json.load(open(pn))["fields"]["values"], float)
    both = np.isfinite(xp) & np.isfinite(xn)
    assert both.any()
    assert np.max(np.abs(xp[both] - xn[both]) / np.abs(xn[both])) <= 1e-9


def test_project_lift_round_trip(grid_doc, tmp_path):
    pat, back = str(tmp_path / "p.json"), str(tmp_path / "b.json")
    assert cli(["project", "-i", grid_doc, "-o", pat]) == 0
    assert cli(["lift", "-i", pat, "-o", back]) == 0
    assert cli(["check", "-i", back, "--suite", "congruence"]) == 0


def test_dual_writes_congruence(grid_doc, tmp_path):
    out = str(tmp_path / "d.json")
    assert cli(["dual", "-i", grid_doc, "-o", out]) == 0
    assert cli(["check", "-i", out, "--suite", "congruence"]) == 0


def test_render_writes_svg(grid_doc, tmp_path):
    pat = str(tmp_path / "p.json")
    svg = str(tmp_path / "p.svg")
    cli(["project", "-i", grid_doc, "-o", pat])
    assert cli(["render", "-i", pat, "-o", svg]) == 0
    text = open(svg).read()
    assert text.startswith('<?xml version="1.0"')
    assert cli(["render", "-i", pat, "-o", svg + "2"]) == 0
    assert text == open(svg + "2").read()


def test_check_failing_suite_exits_1():
    path = os.path.join(FIXTURES, "non_packing.json")
    assert cli(["check", "-i", path, "--suite", "ising", "--tol", "1e-6"]) == 1


def test_check_report_dir_artifacts(grid_doc, tmp_path):
    rep = str(tmp_path / "rep")
    assert cli(["check", "-i", grid_doc, "--suite", "null", "--report-dir", rep]) == 0
    assert sorted(os.listdir(rep)) == ["null-residuals.csv", "null-residuals.png"]
    lines = open(os.path.join(rep, "null-residuals.csv")).read().splitlines()
    assert lines[0] == "check,i,j,residual"
    assert any(row.startswith("black-radius,") for row in lines[1:])
    assert os.path.getsize(os.path.join(rep, "null-residuals.png")) > 1000


def test_usage_errors_exit_2(grid_doc, tmp_path, capsys):
    assert cli(["check", "-i", grid_doc, "--suite", "bogus"]) == 2
    assert cli(["frobnicate"]) == 2
    assert cli([]) == 2
    # wrong input kind for a subcommand
    xt = str(tmp_path / "x.json")
    cli(["xvars", "-i", grid_doc, "-o", xt, "--formula", "plane"])
    assert cli(["project", "-i", xt, "-o", str(tmp_path / "no.json")]) == 2
    assert cli(["miquel", "-i", xt, "-o", str(tmp_path / "no.json"), "--color", "black"]) == 2
    # unreadable input
    assert cli(["project", "-i", str(tmp_path / "absent.json"), "-o", xt]) == 2
    capsys.readouterr()


def test_check_prints_max_and_mean(grid_doc, capsys):
    cli(["check", "-i", grid_doc, "--suite", "congruence"])
    out = capsys.readouterr().out
    assert "check,max,mean" in out
    assert "sphere-line-incidence" in out and "oriented-contact" in out
    assert "PASS" in out


def test_lift_incircular_with_height_and_sign(tmp_path):
    from contactnets.lift import project_circle_pattern
    from contactnets.packing import incircular_from_packing

    inc, cc = generate_grid(5, 5)
    path = str(tmp_path / "inc.json")
    cio.save(inc, path)
    out = str(tmp_path / "cc.json")
    assert cli(["lift", "-i", path, "-o", out, "--height", "0", "--sign", "1"]) == 0
    assert cli(["check", "-i", out, "--suite", "null"]) == 0
