import math

import numpy as np
import pytest

from sphconvex.bodies import (
    BoundaryChart,
    SphericalPolytope,
    boundary_point,
    boundary_sample,
    cap_body,
    contains,
    from_hemispheres,
    hausdorff_upper,
    interior_point,
    s_conv,
    slack,
    supporting_centers,
)
from sphconvex.errors import (
    DimensionMismatchError,
    EmptyInteriorError,
    GeometryError,
    ImproperBodyError,
    NotOnBoundaryError,
)
from sphconvex.generators import gen_cap, north, reuleaux_vertices
from sphconvex.sphere import Cap, distance, normalize, normalize_rows


def test_s_conv_orthant():
    body = s_conv(np.eye(3))
    assert isinstance(body, SphericalPolytope)
    assert np.allclose(body.vertices, np.eye(3)[::-1])
    assert np.allclose(body.hcenters, np.eye(3)[::-1])


def test_s_conv_membership_oracle(rng):
    body = s_conv(np.eye(3))
    q = normalize_rows(rng.standard_normal((1000, 3)))
    assert np.array_equal(contains(body, q), np.all(q >= -1e-9, axis=1))


def test_s_conv_drops_interior_and_duplicates():
    pts = np.vstack([np.eye(3), np.eye(3), normalize([1, 1, 1])])
    assert len(s_conv(pts).vertices) == 3


def test_s_conv_single_point_is_empty_interior():
    with pytest.raises(EmptyInteriorError, match="empty interior"):
        s_conv([[1.0, 0.0, 0.0]])


def test_s_conv_antipodal_pair_is_improper():
    with pytest.raises(ImproperBodyError, match="improper body"):
        s_conv([[1.0, 0, 0], [-1.0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]])


def test_from_hemispheres_orthant():
    body = from_hemispheres(np.eye(3))
    assert np.allclose(body.vertices, np.eye(3)[::-1])


def test_from_hemispheres_errors():
    with pytest.raises(EmptyInteriorError):
        from_hemispheres([[1.0, 0, 0], [-1.0, 0, 0]])
    with pytest.raises(ImproperBodyError):
        from_hemispheres([[1.0, 0, 0]])


def test_s_conv_four_dimensions():
    body = s_conv(np.eye(4))
    assert body.dim == 4
    assert np.allclose(np.sort(body.hcenters, axis=0), np.sort(np.eye(4), axis=0))


def test_contains_examples(orthant, reuleaux60):
    assert contains(orthant, normalize([1, 1, 1]))
    assert not contains(orthant, [-1.0, 0, 0])
    assert all(contains(reuleaux60, v) for v in reuleaux_vertices(math.pi / 3))
    with pytest.raises(DimensionMismatchError):
        contains(orthant, [1.0, 0.0])


def test_interior_point(orthant, reuleaux60):
    assert np.allclose(interior_point(orthant), normalize([1, 1, 1]))
    assert np.allclose(interior_point(reuleaux60), north(3))


def test_interior_point_off_centre_caps():
    # the mean of the centres is outside this lens; the slack search must find a point
    caps = [Cap([0, 0, 1], 0.5), Cap(normalize([0, 0.8, 1]), 0.5)]
    body = cap_body(caps)
    assert slack(body, interior_point(body)) > 0


def test_cap_body_errors():
    with pytest.raises(EmptyInteriorError):
        cap_body([Cap([0, 0, 1], 0.2), Cap([0, 0, -1], 0.2)])
    with pytest.raises(GeometryError):
        cap_body([])
    with pytest.raises(ImproperBodyError):
        cap_body([Cap([0, 0, 1], math.pi / 2)])


def test_boundary_point_orthant(orthant):
    c = normalize([1, 1, 1])
    p = boundary_point(orthant, c, [1.0, 0.0, 0.0])
    assert min(p[1], p[2]) == pytest.approx(0.0, abs=1e-12)
    assert abs(slack(orthant, p)) < 1e-12


def test_boundary_point_cap(cap_pi5, rng):
    for _ in range(5):
        p = boundary_point(cap_pi5, north(3), rng.standard_normal(3))
        assert distance(p, north(3)) == pytest.approx(math.pi / 5)


def test_boundary_point_requires_interior_start(orthant):
    with pytest.raises(GeometryError):
        boundary_point(orthant, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])


def test_boundary_sample(reuleaux60, cfg):
    assert boundary_sample(reuleaux60, 0).shape == (0, 3)
    pts = boundary_sample(reuleaux60, 300, seed=4)
    assert np.all(np.abs(slack(reuleaux60, pts)) <= cfg.tol_sample)
    assert np.array_equal(pts, boundary_sample(reuleaux60, 300, seed=4))


def test_supporting_centers_orthant(orthant):
    c = supporting_centers(orthant, normalize([1, 1, 0]))
    assert np.allclose(c, [[0, 0, 1]])
    c = supporting_centers(orthant, [1.0, 0, 0])
    assert len(c) == 2
    assert np.allclose(np.sort(c, axis=0), [[0, 0, 0], [0, 1, 1]])


def test_supporting_centers_cap(cap_pi5):
    p = boundary_point(cap_pi5, north(3), [1.0, 0, 0])
    (q,) = supporting_centers(cap_pi5, p)
    assert distance(p, q) == pytest.approx(math.pi / 2)
    # q lies on the great circle through N and p, on N's side
    assert abs(np.linalg.det(np.vstack([north(3), p, q]))) < 1e-12
    assert q @ north(3) > 0


def test_supporting_centers_rejects_interior(orthant):
    with pytest.raises(NotOnBoundaryError):
        supporting_centers(orthant, normalize([1, 1, 1]))


def test_chart_refine_finds_far_boundary(reuleaux60):
    chart = BoundaryChart(reuleaux60, 512)
    assert np.all(np.abs(slack(reuleaux60, chart.grid_points)) < 1e-12)
    target = np.array([0.0, -1.0, 0.0])
    i = np.argmin(chart.grid_points @ target)
    params, best, pts = chart.refine(lambda rows, p: p @ target, chart.grid_params[[i]])
    assert best[0] <= chart.grid_points[i] @ target


def test_hausdorff_upper_caps():
    a = gen_cap(north(3), 0.5)
    b = gen_cap(north(3), 0.52)
    assert hausdorff_upper(a, b, 500) == pytest.approx(0.02)
    assert hausdorff_upper(a, a, 500) == 0.0
