"""Kernel oracle tests.

Expected values here were derived by hand from the defining equations
(contact equations, lift formulas) and frozen; the library must reproduce
them.  Random checks verify the algebraic identities by independent
substitution.
"""
import math

import numpy as np
import pytest

from contactnets import lorentz as lz
from contactnets.errors import (
    LightConeSingularity,
    NonIsotropicDirection,
)

S2 = math.sqrt(2.0)
H = S2 / 2.0  # height of the unit-grid white sphere centers


def rng(seed=0):
    return np.random.default_rng(seed)


def random_sphere(r, scale=3.0):
    c = r.uniform(-scale, scale, size=3)
    rho = r.uniform(-2.0, 2.0)
    return lz.OrientedSphere(c, rho)


# -- bilinear form and classification ----------------------------------------

def test_lorentz_dot_frozen():
    assert lz.lorentz_dot(np.array([1.0, 2.0, 3.0]), np.array([1.0, 2.0, 3.0])) == -4.0
    assert lz.lorentz_dot(np.array([1.0, 0.0, 1.0]), np.array([1.0, 0.0, 1.0])) == 0.0
    assert lz.lorentz_sq(np.array([0.0, 0.0, 2.0])) == -4.0


def test_classify():
    assert lz.classify(np.array([1.0, 0.0, 0.0])) == "spacelike"
    assert lz.classify(np.array([0.0, 0.0, 1.0])) == "timelike"
    assert lz.classify(np.array([1.0, 0.0, 1.0])) == "isotropic"
    # near-cone vector inside the relative tolerance band
    assert lz.classify(np.array([1.0, 0.0, 1.0 + 1e-12])) == "isotropic"
    assert lz.classify(np.array([1.0, 0.0, 1.0 + 1e-3])) == "timelike"


def test_sphere_kinds():
    assert lz.OrientedSphere(np.zeros(3), 1.0).kind() == "timelike"
    assert lz.OrientedSphere(np.zeros(3), 0.0).kind() == "null"
    assert lz.OrientedSphere(np.zeros(3), -0.5).kind() == "timelike"


# -- cyclographic model ------------------------------------------------------

def test_oriented_contact_residual_unit_grid_pairs():
    # white sphere against a black null sphere: 1 - 1/2 - 1/2 = 0
    w = lz.OrientedSphere(np.array([1.0, 0.0, H]), H)
    b = lz.OrientedSphere(np.array([0.0, 0.0, 0.0]), 0.0)
    assert lz.oriented_contact_residual(w, b) == pytest.approx(0.0, abs=1e-15)
    # two adjacent white spheres: 2 - 2 = 0
    w2 = lz.OrientedSphere(np.array([2.0, 1.0, H]), -H)
    assert lz.oriented_contact_residual(w, w2) == pytest.approx(0.0, abs=1e-15)
    # a non-touching pair keeps its defect
    t = lz.OrientedSphere(np.array([3.0, 0.0, 0.0]), 1.0)
    s = lz.OrientedSphere(np.zeros(3), 1.0)
    assert lz.oriented_contact_residual(s, t) == pytest.approx(9.0 - 0.0)


def test_tangential_distance_equals_cyclo_norm():
    r = rng(1)
    for _ in range(100):
        s, t = random_sphere(r), random_sphere(r)
        d = s.center - t.center
        expect = lz.lorentz_sq(d) - (s.rho - t.rho) ** 2
        assert lz.tangential_distance_sq(s, t) == pytest.approx(expect, rel=1e-12, abs=1e-12)


def test_cyclo_lift_round_trip():
    r = rng(2)
    for _ in range(50):
        s = random_sphere(r)
        back = lz.cyclo_unlift(lz.cyclo_lift(s))
        np.testing.assert_allclose(back.center, s.center, atol=1e-15)
        assert back.rho == s.rho


# -- Moebius model -----------------------------------------------------------

def test_mobius_lift_frozen():
    np.testing.assert_allclose(
        lz.mobius_lift_point(np.zeros(3)), [0.0, 0.0, 0.5, 0.0, 0.5], atol=1e-15
    )
    np.testing.assert_allclose(
        lz.mobius_lift(lz.OrientedSphere(np.zeros(3), 1.0)),
        [0.0, 0.0, 1.0, 0.0, 0.0],
        atol=1e-15,
    )


def test_mobius_q_is_rho_squared():
    r = rng(3)
    for _ in range(100):
        s = random_sphere(r, scale=10.0)
        m = lz.mobius_lift(s)
        scale = 1.0 + float(np.dot(m, m))
        assert abs(lz.mobius_q(m) - s.rho**2) <= 1e-12 * scale


def test_mobius_touch_residual_is_orientation_blind():
    s = lz.OrientedSphere(np.zeros(3), 1.0)
    t_plus = lz.OrientedSphere(np.array([2.0, 0.0, 0.0]), 1.0)
    t_minus = lz.OrientedSphere(np.array([2.0, 0.0, 0.0]), -1.0)
    # unoriented tangency holds for both orientations
    assert lz.mobius_touch_residual(s, t_plus) == pytest.approx(0.0, abs=1e-14)
    assert lz.mobius_touch_residual(s, t_minus) == pytest.approx(0.0, abs=1e-14)
    # oriented contact only for the reversed orientation
    assert lz.oriented_contact_residual(s, t_plus) == pytest.approx(4.0)
    assert lz.oriented_contact_residual(s, t_minus) == pytest.approx(0.0, abs=1e-14)


def constructed_touching_pair(r):
    s = random_sphere(r)
    # direction of spacelike unit Lorentz length
    while True:
        u = r.uniform(-1.0, 1.0, size=3)
        q = lz.lorentz_sq(u)
        if q > 0.1:
            u = u / math.sqrt(q)
            break
    rho2 = r.uniform(-2.0, 2.0)
    c2 = s.center + (s.rho - rho2) * u
    return s, lz.OrientedSphere(c2, rho2)


def test_oriented_contact_implies_mobius_and_lie_contact():
    r = rng(4)
    for _ in range(100):
        s, t = constructed_touching_pair(r)
        scale = 1.0 + float(np.max(np.abs([*s.center, s.rho, *t.center, t.rho]))) ** 2
        assert abs(lz.oriented_contact_residual(s, t)) <= 1e-12 * scale
        assert abs(lz.mobius_touch_residual(s, t)) <= 1e-10 * scale**2
        assert abs(lz.lie_dot(lz.lie_lift(s), lz.lie_lift(t))) <= 1e-11 * scale


# -- Lie model ---------------------------------------------------------------

def test_lie_lift_is_on_quadric_and_pairing_identity():
    r = rng(5)
    for _ in range(100):
        s, t = random_sphere(r), random_sphere(r)
        ls, lt = lz.lie_lift(s), lz.lie_lift(t)
        scale = 1.0 + float(np.dot(ls, ls))
        assert abs(lz.lie_q(ls)) <= 1e-12 * scale
        # pairing doubles to minus the squared tangential distance
        assert 2.0 * lz.lie_dot(ls, lt) == pytest.approx(
            -lz.tangential_distance_sq(s, t), rel=1e-11, abs=1e-11
        )


def test_sphere_from_lie_round_trip():
    r = rng(6)
    for _ in range(50):
        s = random_sphere(r)
        back = lz.sphere_from_lie(lz.lie_lift(s) * 2.5)
        np.testing.assert_allclose(back.center, s.center, atol=1e-12)
        assert back.rho == pytest.approx(s.rho, abs=1e-12)


# -- inversion ---------------------------------------------------------------

def point_on_sphere(s, theta, t):
    d = np.array(
        [math.cos(theta) * math.cosh(t), math.sin(theta) * math.cosh(t), math.sinh(t)]
    )
    return s.center + s.rho * d


def test_invert_point_fixes_sphere_and_is_involutive():
    r = rng(7)
    s = lz.OrientedSphere(np.array([0.3, -0.2, 0.5]), 1.2)
    for _ in range(50):
        x = point_on_sphere(s, r.uniform(0, 2 * math.pi), r.uniform(-1, 1))
        np.testing.assert_allclose(lz.invert_point(s, x), x, atol=1e-12)
    for _ in range(50):
        x = r.uniform(-2, 2, size=3)
        if abs(lz.lorentz_sq(x - s.center)) < 0.1:
            continue
        np.testing.assert_allclose(
            lz.invert_point(s, lz.invert_point(s, x)), x, atol=1e-10
        )


def test_invert_point_raises_on_light_cone():
    s = lz.OrientedSphere(np.zeros(3), 1.0)
    with pytest.raises(LightConeSingularity):
        lz.invert_point(s, np.array([1.0, 0.0, 1.0]))


# -- oriented isotropic lines ------------------------------------------------

GRID_DIR = np.array([1.0 / S2, 1.0 / S2, 1.0])


def test_make_iso_line_canonical_form():
    ln = lz.make_iso_line(np.zeros(3), np.array([1.0, 1.0, S2]), side=+1)
    np.testing.assert_allclose(ln.dir, GRID_DIR, atol=1e-15)
    # side +1 takes the lexicographically larger of the two candidates
    np.testing.assert_allclose(ln.ospan, [1 / S2, -1 / S2, 0.0, 1.0], atol=1e-15)
    lm = lz.make_iso_line(np.zeros(3), np.array([1.0, 1.0, S2]), side=-1)
    np.testing.assert_allclose(lm.ospan, [-1 / S2, 1 / S2, 0.0, 1.0], atol=1e-15)
    # base is canonicalized to the height-zero point of the line
    ln2 = lz.make_iso_line(np.array([1.0, 1.0, S2]), np.array([-1.0, -1.0, -S2]), side=+1)
    np.testing.assert_allclose(ln2.base, [0.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(ln2.dir, GRID_DIR, atol=1e-15)


def test_make_iso_line_invariants_random():
    r = rng(8)
    for _ in range(100):
        theta = r.uniform(0, 2 * math.pi)
        d = np.array([math.cos(theta), math.sin(theta), 1.0]) * r.uniform(0.1, 5.0)
        if r.uniform() < 0.5:
            d = -d
        ln = lz.make_iso_line(r.uniform(-3, 3, size=3), d, side=r.choice([-1, 1]))
        assert abs(lz.lorentz_sq(ln.dir)) <= 1e-12
        assert ln.dir[2] == pytest.approx(1.0)
        assert abs(lz.cyclo_sq(ln.ospan)) <= 1e-12
        d4 = np.append(ln.dir, 0.0)
        assert abs(lz.cyclo_dot(d4, ln.ospan)) <= 1e-12
        assert ln.ospan[2] == 0.0 and ln.ospan[3] == 1.0
        assert ln.base[2] == pytest.approx(0.0, abs=1e-12)


def test_make_iso_line_rejects_non_isotropic():
    with pytest.raises(NonIsotropicDirection):
        lz.make_iso_line(np.zeros(3), np.array([1.0, 0.0, 1.001]))


def test_iso_line_contact_residual_unit_grid():
    plus = lz.make_iso_line(np.zeros(3), GRID_DIR, side=+1)
    minus = lz.make_iso_line(np.zeros(3), GRID_DIR, side=-1)
    w = lz.OrientedSphere(np.array([1.0, 0.0, H]), H)
    # the white sphere lies on exactly one of the two orientations
    assert lz.iso_line_contact_residual(w, plus) == pytest.approx(0.0, abs=1e-14)
    assert lz.iso_line_contact_residual(w, minus) == pytest.approx(1.0)
    # null spheres centered on the line touch it for either orientation
    for b in (np.array([0.0, 0.0, 0.0]), np.array([1.0, 1.0, S2])):
        nb = lz.OrientedSphere(b, 0.0)
        assert lz.iso_line_contact_residual(nb, plus) == pytest.approx(0.0, abs=1e-14)
        assert lz.iso_line_contact_residual(nb, minus) == pytest.approx(0.0, abs=1e-14)


def test_sphere_from_axis_and_line_unit_grid():
    plus = lz.make_iso_line(np.zeros(3), GRID_DIR, side=+1)
    s = lz.sphere_from_axis_and_line(np.array([1.0, 0.0]), plus)
    np.testing.assert_allclose(s.center, [1.0, 0.0, H], atol=1e-14)
    assert s.rho == pytest.approx(H)
    # axis through a point of the line gives the null sphere at that point
    n = lz.sphere_from_axis_and_line(np.array([1.0, 1.0]), plus)
    np.testing.assert_allclose(n.center, [1.0, 1.0, S2], atol=1e-14)
    assert n.rho == pytest.approx(0.0, abs=1e-14)


def test_sphere_from_axis_and_line_touches_line():
    r = rng(9)
    for _ in range(50):
        theta = r.uniform(0, 2 * math.pi)
        ln = lz.make_iso_line(
            r.uniform(-3, 3, size=3),
            np.array([math.cos(theta), math.sin(theta), 1.0]),
            side=r.choice([-1, 1]),
        )
        s = lz.sphere_from_axis_and_line(r.uniform(-3, 3, size=2), ln)
        assert lz.iso_line_contact_residual(s, ln) <= 1e-12 * (1 + abs(s.rho)) ** 2


# -- smallest circle and vertical reflections --------------------------------

def test_smallest_circle_unit_grid():
    for sign in (+1.0, -1.0):
        s = lz.OrientedSphere(np.array([1.0, 0.0, H]), sign * H)
        c = lz.smallest_circle(s)
        np.testing.assert_allclose(c.center, [1.0, 0.0, H], atol=1e-15)
        assert c.radius == pytest.approx(H)
        np.testing.assert_allclose(c.normal, [0.0, 0.0, 1.0])
        assert c.offset == pytest.approx(-H)
        assert lz.lorentz_sq(c.normal) == pytest.approx(-1.0)


def test_reflect_vertical_point_and_line():
    a, u = np.array([1.0, 0.0]), np.array([0.0, 1.0])  # the 2D line x = 1
    np.testing.assert_allclose(
        lz.reflect_vertical_point(a, u, np.array([0.0, 0.0, 5.0])), [2.0, 0.0, 5.0]
    )
    ln = lz.make_iso_line(np.zeros(3), GRID_DIR, side=+1)
    rl = lz.reflect_vertical_line(a, u, ln)
    np.testing.assert_allclose(rl.base, [2.0, 0.0, 0.0], atol=1e-14)
    np.testing.assert_allclose(rl.dir, [-1 / S2, 1 / S2, 1.0], atol=1e-14)
    np.testing.assert_allclose(rl.ospan, [-1 / S2, -1 / S2, 0.0, 1.0], atol=1e-14)


def test_reflect_vertical_is_lorentz_isometry():
    r = rng(10)
    for _ in range(50):
        a = r.uniform(-2, 2, size=2)
        ang = r.uniform(0, 2 * math.pi)
        u = np.array([math.cos(ang), math.sin(ang)])
        x, y = r.uniform(-3, 3, size=3), r.uniform(-3, 3, size=3)
        rx = lz.reflect_vertical_point(a, u, x)
        ry = lz.reflect_vertical_point(a, u, y)
        assert lz.lorentz_sq(rx - ry) == pytest.approx(lz.lorentz_sq(x - y), rel=1e-12, abs=1e-12)
        # involutive
        np.testing.assert_allclose(lz.reflect_vertical_point(a, u, rx), x, atol=1e-12)


# -- common line of a face quad of sphere lifts ------------------------------

def test_iso_line_from_sphere_quad_recovers_grid_face_line():
    w1 = lz.OrientedSphere(np.array([1.0, 0.0, H]), H)
    w2 = lz.OrientedSphere(np.array([0.0, 1.0, H]), -H)
    b1 = lz.OrientedSphere(np.zeros(3), 0.0)
    b2 = lz.OrientedSphere(np.array([1.0, 1.0, S2]), 0.0)
    ln = lz.iso_line_from_sphere_quad([b1, w1, b2, w2])
    np.testing.assert_allclose(ln.base, [0.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(ln.dir, GRID_DIR, atol=1e-12)
    np.testing.assert_allclose(ln.ospan, [1 / S2, -1 / S2, 0.0, 1.0], atol=1e-12)
    for s in (w1, w2, b1, b2):
        assert lz.iso_line_contact_residual(s, ln) <= 1e-20


def test_contact_point_of_touching_spheres():
    w1 = lz.OrientedSphere(np.array([1.0, 0.0, H]), H)
    w2 = lz.OrientedSphere(np.array([0.0, 1.0, H]), -H)
    p = lz.contact_point(w1, w2)
    np.testing.assert_allclose(p, [0.5, 0.5, H], atol=1e-14)
    # the contact point lies on both spheres
    for s in (w1, w2):
        assert lz.lorentz_sq(p - s.center) == pytest.approx(s.rho**2, abs=1e-14)
