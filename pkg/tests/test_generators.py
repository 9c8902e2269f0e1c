import math

import numpy as np
import pytest

from sphconvex.bodies import CapIntersectionBody, SphericalPolytope, hausdorff_upper, slack
from sphconvex.errors import GeometryError
from sphconvex.generators import (
    gen_cap,
    gen_gamma,
    gen_orthant,
    gen_random_polytope,
    gen_reuleaux,
    north,
    reuleaux_circumradius,
    reuleaux_vertices,
    sample_in_cap,
)
from sphconvex.metrics import diameter
from sphconvex.polar import polar_body
from sphconvex.sphere import distance
from sphconvex.wulff import positively_spans

from oracles import circumradius_bisection


@pytest.mark.parametrize("tau", [0.3, math.pi / 4, math.pi / 3, 1.4, math.pi / 2])
def test_circumradius_matches_bisection(tau):
    assert reuleaux_circumradius(tau) == pytest.approx(circumradius_bisection(tau), abs=1e-12)


def test_reuleaux_vertex_spacing():
    v = reuleaux_vertices(math.pi / 3)
    for i in range(3):
        assert distance(v[i], v[(i + 1) % 3]) == pytest.approx(math.pi / 3)
        assert distance(v[i], north(3)) == pytest.approx(math.asin(1 / math.sqrt(3)))


def test_reuleaux_branches():
    assert isinstance(gen_reuleaux(math.pi / 3), CapIntersectionBody)
    assert isinstance(gen_reuleaux(2 * math.pi / 3), SphericalPolytope)
    with pytest.raises(GeometryError):
        gen_reuleaux(4.0)
    with pytest.raises(GeometryError):
        gen_reuleaux(0.0)


@pytest.mark.parametrize("tau", [math.pi / 3, math.pi / 4])
def test_reuleaux_matches_polar_of_complement(tau):
    direct = gen_reuleaux(tau)
    via = polar_body(gen_reuleaux(math.pi - tau))
    assert hausdorff_upper(direct, via, 2048) <= 2e-3


def test_reuleaux_right_angle_is_orthant_like():
    body = gen_reuleaux(math.pi / 2)
    assert diameter(body).value == pytest.approx(math.pi / 2, abs=1e-6)


def test_gen_cap_and_orthant():
    assert gen_cap(north(3), 0.5).radii[0] == 0.5
    with pytest.raises(GeometryError):
        gen_cap(north(3), math.pi / 2)
    assert gen_orthant(4).vertices.shape == (4, 4)
    with pytest.raises(GeometryError):
        gen_orthant(2)


def test_sample_in_cap_inside_and_spread():
    rng = np.random.default_rng(0)
    pts = sample_in_cap(rng, north(3), 0.5, 4000)
    ang = np.arccos(np.clip(pts[:, 2], -1, 1))
    assert ang.max() <= 0.5 + 1e-12
    # uniform area: P(angle <= a) = (1 - cos a) / (1 - cos 0.5)
    frac = np.mean(ang <= 0.25)
    assert frac == pytest.approx((1 - math.cos(0.25)) / (1 - math.cos(0.5)), abs=0.03)


def test_random_polytopes_proper_and_deterministic():
    for seed in range(50):
        body = gen_random_polytope(3, 10, 0.8, seed)
        assert diameter(body).value <= 1.6 + 1e-9
        assert slack(body, body.vertices.mean(axis=0) / np.linalg.norm(body.vertices.mean(axis=0))) > 0
    a, b = gen_random_polytope(3, 10, 0.8, 7), gen_random_polytope(3, 10, 0.8, 7)
    assert np.array_equal(a.vertices, b.vertices)
    with pytest.raises(GeometryError):
        gen_random_polytope(3, 2, 0.8, 0)
    with pytest.raises(GeometryError):
        gen_random_polytope(3, 10, 2.0, 0)


def test_gen_gamma_families():
    for kind in ("constant", "perturbed", "cube"):
        g = gen_gamma(kind, seed=1)
        assert positively_spans(g.directions)
        assert np.all(g.values > 0)
    g = gen_gamma("perturbed", amplitude=0.2, seed=3)
    assert np.all(np.abs(g.values - 1.0) <= 0.2)
    assert g.provenance == "perturbed"
    with pytest.raises(GeometryError):
        gen_gamma("perturbed", amplitude=1.5)
    with pytest.raises(GeometryError):
        gen_gamma("sphere")
