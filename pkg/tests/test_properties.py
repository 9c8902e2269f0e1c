import math

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from sphconvex.bodies import contains, s_conv, slack
from sphconvex.generators import gen_cap, gen_gamma, gen_random_polytope, north
from sphconvex.metrics import diameter, thickness, verify_theorem_1
from sphconvex.polar import polar_body
from sphconvex.sphere import distance, normalize, normalize_rows
from sphconvex.wulff import build_wulff, central_project, central_unproject, radial, spherical_wulff

SLOW = settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
FAST = settings(max_examples=100, deadline=None)

seeds = st.integers(0, 2**31 - 1)
polytopes = st.builds(
    lambda m, spread, seed: gen_random_polytope(3, m, spread, seed),
    st.integers(5, 16), st.floats(0.3, 1.3), seeds,
)
unit = st.lists(st.floats(-1, 1), min_size=3, max_size=3).filter(
    lambda v: np.linalg.norm(v) > 0.1).map(normalize)


@SLOW
@given(polytopes)
def test_double_polar_exact(body):
    back = polar_body(polar_body(body))
    assert np.array_equal(back.vertices, body.vertices)
    assert np.array_equal(back.hcenters, body.hcenters)


@SLOW
@given(polytopes)
def test_thickness_at_most_diameter(body):
    assert thickness(body).value <= diameter(body).value + 1e-9


@SLOW
@given(polytopes)
def test_duality_identity(body):
    th = thickness(body)
    assert abs(th.cross_check - (math.pi - diameter(polar_body(body)).value)) <= 2e-3


@SLOW
@given(polytopes)
def test_width_and_diameter_verdicts_agree(body):
    rep = verify_theorem_1(body)
    assert rep.constant_width.is_constant == rep.constant_diameter.is_constant
    assert rep.passed


@SLOW
@given(polytopes, seeds)
def test_hull_contains_convex_combinations(body, seed):
    rng = np.random.default_rng(seed)
    w = rng.dirichlet(np.ones(len(body.vertices)), size=20)
    pts = normalize_rows(w @ body.vertices)
    assert np.all(contains(body, pts))
    again = s_conv(np.vstack([body.vertices, pts]))
    assert np.array_equal(again.vertices, body.vertices)


@SLOW
@given(polytopes)
def test_vertices_on_boundary(body):
    s = slack(body, body.vertices)
    assert np.all(s > -1e-12) and np.all(np.min(body.vertices @ body.hcenters.T, axis=1) < 1e-12)


@FAST
@given(unit, unit, unit)
def test_distance_metric(p, q, r):
    assert distance(p, q) == distance(q, p)
    assert 0.0 <= distance(p, q) <= math.pi
    assert distance(p, r) <= distance(p, q) + distance(q, r) + 1e-12


@FAST
@given(st.lists(st.floats(-50, 50), min_size=2, max_size=2))
def test_central_projection_roundtrip(x):
    x = np.asarray(x)
    p = central_project(x)
    assert p[-1] > 0 and abs(np.linalg.norm(p) - 1) < 1e-12
    assert np.allclose(central_unproject(p), x, atol=1e-9 * (1 + np.abs(x).max()))


@SLOW
@given(seeds, st.floats(0.0, 0.4))
def test_radial_below_gamma(seed, amp):
    g = gen_gamma("perturbed", grid=120, amplitude=amp, seed=seed)
    w = build_wulff(g)
    assert np.all(radial(w, g.directions) <= g.values * (1 + 1e-9))


@SLOW
@given(seeds)
def test_lift_vertices_in_open_upper_hemisphere(seed):
    w = build_wulff(gen_gamma("perturbed", grid=120, seed=seed))
    lift = spherical_wulff(w).polytope
    assert np.all(lift.vertices[:, -1] > 0)


@SLOW
@given(st.floats(0.05, 1.5))
def test_cap_diameter_and_thickness(r):
    cap = gen_cap(north(3), r)
    assert abs(diameter(cap).value - 2 * r) <= 1e-3
    assert abs(thickness(cap).value - 2 * r) <= 1e-3
