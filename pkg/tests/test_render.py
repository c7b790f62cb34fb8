"""SVG output: structure, determinism, failure modes."""
import re

import numpy as np
import pytest

from contactnets.errors import EmptyNet
from contactnets.grid import QuadGrid
from contactnets.lift import project_circle_pattern, project_cycle_pattern
from contactnets.miquel import sweep_black
from contactnets.nets import CirclePattern, IncircularNet
from contactnets.packing import (
    generate_grid,
    generate_isothermic,
    incircular_from_packing,
)
from contactnets.render import render_svg


def _layer(svg, name):
    m = re.search(rf'<g id="{name}">\n(.*?)\n</g>', svg, re.S)
    return m.group(1) if m else ""


def test_grid_packing_layers():
    _, cc = generate_grid(5, 5)
    svg = render_svg(project_circle_pattern(cc))
    assert svg.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    assert 'version="1.1"' in svg
    assert _layer(svg, "circles").count("<circle") == 5 * 5
    assert _layer(svg, "face-points").count("<circle") == 4 * 4
    assert _layer(svg, "centers").count("<circle") == 5 * 5


def test_byte_identical_across_runs():
    _, cc = generate_grid(4, 6)
    a = render_svg(project_circle_pattern(cc))
    b = render_svg(project_circle_pattern(cc))
    assert a.encode() == b.encode()


def test_cycle_pattern_has_tangent_lines():
    _, cc = generate_grid(5, 5)
    svg = render_svg(project_cycle_pattern(cc))
    assert _layer(svg, "tangent-lines").count("<line") == 4 * 4
    assert _layer(svg, "circles").count("<circle") == 5 * 5


def test_incircular_net_render():
    _, cc = generate_grid(5, 5)
    inc = incircular_from_packing(project_circle_pattern(cc))
    svg = render_svg(inc)
    n_inc = int(np.sum(np.isfinite(inc.incircle_radii)))
    assert _layer(svg, "incircles").count("<circle") == n_inc
    assert "<line" in _layer(svg, "quads")


def test_companion_overlay_shares_incircles():
    cc = generate_isothermic(4, size=7)
    inc1 = incircular_from_packing(project_circle_pattern(cc))
    inc2 = incircular_from_packing(project_circle_pattern(sweep_black(cc)))
    svg = render_svg(inc1, companion=inc2)
    names = re.findall(r'<g id="([^"]+)"', svg)
    assert "quads" in names and "quads-companion" in names
    assert names.count("incircles") == 1
    assert svg == render_svg(inc1, companion=inc2)


def test_empty_net_raises():
    g = QuadGrid(3, 3)
    nanc = np.full((3, 3, 2), np.nan)
    nanr = np.full((3, 3), np.nan)
    p = CirclePattern(g, nanc, nanr, np.full((2, 2, 2), np.nan))
    with pytest.raises(EmptyNet):
        render_svg(p)
    inc = IncircularNet(g, nanc, nanc, nanr)
    with pytest.raises(EmptyNet):
        render_svg(inc)


def test_unsupported_type_raises():
    _, cc = generate_grid(3, 3)
    with pytest.raises(EmptyNet):
        render_svg(cc)


def test_coordinates_fixed_precision():
    _, cc = generate_grid(4, 4)
    svg = render_svg(project_circle_pattern(cc))
    for val in re.findall(r'c[xy]="([^"]+)"', svg):
        assert re.fullmatch(r"-?\d+\.\d{6}", val), val
