import numpy as np
import pytest

from sphconvex._cone import (
    _facets_brute,
    _hull_qhull,
    cone_hull,
    lex_order,
    max_margin_direction,
    merge_close,
)
from sphconvex.errors import EmptyInteriorError, ImproperBodyError
from sphconvex.sphere import normalize_rows


def test_lex_order_ignores_roundoff():
    pts = np.array([[0.0, 1.0], [1e-17, 0.5], [-1e-17, 0.2]])
    assert list(lex_order(pts)) == [2, 1, 0]


def test_merge_close_keeps_one_per_cluster():
    pts = np.array([[1.0, 0.0], [1.0, 1e-12], [0.0, 1.0]])
    keep = merge_close(pts, 1e-9)
    assert len(keep) == 2


def test_max_margin_direction_orthant():
    w, margin = max_margin_direction(np.eye(3))
    assert np.allclose(w, np.ones(3) / np.sqrt(3))
    assert margin == pytest.approx(1 / np.sqrt(3))


def test_qhull_matches_brute_force(rng):
    c = np.array([0.2, -0.1, 1.0])
    pts = normalize_rows(c + 0.3 * rng.standard_normal((40, 3)))
    brute = normalize_rows(_facets_brute(pts))
    _, hull = _hull_qhull(pts, pts.mean(axis=0))
    hull = normalize_rows(hull)
    brute = brute[merge_close(brute, 1e-9)]
    hull = hull[merge_close(hull, 1e-9)]
    assert len(brute) == len(hull)
    gap = np.linalg.norm(brute[:, None] - hull[None], axis=2)
    assert gap.min(axis=1).max() < 1e-9


def test_cone_hull_interior_point_dropped():
    pts = np.vstack([np.eye(3), normalize_rows(np.ones((1, 3)))])
    vidx, normals = cone_hull(pts, 1e-9)
    assert sorted(vidx) == [0, 1, 2]
    assert np.allclose(normals, np.eye(3)[::-1])


def test_cone_hull_errors():
    with pytest.raises(ImproperBodyError):
        cone_hull(np.array([[1.0, 0, 0], [-1.0, 0, 0], [0, 1.0, 0]]), 1e-9)
    with pytest.raises(EmptyInteriorError):
        cone_hull(normalize_rows(np.array([[1.0, 0, 0], [0, 1.0, 0], [1.0, 1.0, 0]])), 1e-9)
