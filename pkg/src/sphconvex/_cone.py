"""Facet and extreme-ray enumeration for pointed polyhedral cones in R^d.

A spherical polytope is the trace on the sphere of such a cone, so both of its
representations come from here: extreme rays are the vertices, inward facet
normals are the hemisphere centres.
"""
from __future__ import annotations

import itertools

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError, cKDTree

from .errors import EmptyInteriorError, ImproperBodyError
from .sphere import normalize_rows, tangent_basis

# Brute force over (d-1)-subsets is used below these sizes.
BRUTE_MAX_DIM = 4
BRUTE_MAX_POINTS = 64
_FACET_EPS = 1e-12


def lex_order(points: np.ndarray) -> np.ndarray:
    """Lexicographic order, blind to round-off below 1e-9."""
    return np.lexsort(np.round(points, 9).T[::-1])


def merge_close(points: np.ndarray, tol: float) -> np.ndarray:
    """Indices of a lexicographically first representative per cluster of near-equal rows."""
    order = lex_order(points)
    pts = points[order]
    parent = np.arange(len(pts))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in cKDTree(pts).query_pairs(tol):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(len(pts))], dtype=int)
    return order[np.unique(roots)]


def max_margin_direction(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Unit ``w`` maximising ``min_i w . p_i`` (over a box, then normalised) and that margin."""
    n, d = points.shape
    # variables (w_1..w_d, t); maximise t subject to p_i . w >= t, |w_j| <= 1
    c = np.zeros(d + 1)
    c[-1] = -1.0
    a_ub = np.hstack([-points, np.ones((n, 1))])
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(n),
                  bounds=[(-1.0, 1.0)] * d + [(None, None)], method="highs")
    if res.status != 0 or res.x[-1] <= 0.0:
        return np.zeros(d), 0.0
    w = res.x[:d] / np.linalg.norm(res.x[:d])
    return w, float(np.min(points @ w))


def check_pointed_full(points: np.ndarray, tol: float) -> np.ndarray:
    """Validate a generator set; returns an interior-ish reference direction."""
    _, margin = max_margin_direction(points)
    if margin <= tol:
        raise ImproperBodyError("improper body: points do not lie in an open hemisphere")
    sv = np.linalg.svd(points, compute_uv=False)
    if points.shape[0] < points.shape[1] or sv[-1] <= 1e-10 * sv[0]:
        raise EmptyInteriorError("empty interior: generators span a lower-dimensional cone")
    return points.mean(axis=0)


def _null_vectors(stack: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unit null vector of each ``(d-1, d)`` block, and whether the block has full rank."""
    if stack.shape[2] == 3:
        n = np.cross(stack[:, 0], stack[:, 1])
        norms = np.linalg.norm(n, axis=1)
        ok = norms > 1e-12
        n[ok] /= norms[ok, None]
        return n, ok
    _, s, vh = np.linalg.svd(stack)
    ok = s[:, -1] > 1e-12 * s[:, 0]
    return vh[:, -1, :], ok


def _facets_brute(points: np.ndarray) -> np.ndarray:
    n, d = points.shape
    combos = np.array(list(itertools.combinations(range(n), d - 1)), dtype=int)
    normals, ok = _null_vectors(points[combos])
    normals = normals[ok]
    s = normals @ points.T
    pos = np.all(s >= -_FACET_EPS, axis=1)
    neg = np.all(s <= _FACET_EPS, axis=1)
    return np.vstack([normals[pos], -normals[neg]])


def _extreme_from_facets(points: np.ndarray, normals: np.ndarray) -> np.ndarray:
    d = points.shape[1]
    active = np.abs(points @ normals.T) <= 1e-10
    keep = []
    for i in range(points.shape[0]):
        act = normals[active[i]]
        if act.shape[0] >= d - 1 and np.linalg.matrix_rank(act, tol=1e-9) == d - 1:
            keep.append(i)
    return np.asarray(keep, dtype=int)


def _hull_qhull(points: np.ndarray, inside: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, _ = max_margin_direction(points)
    basis = tangent_basis(w)
    chart = (points @ basis.T) / (points @ w)[:, None]
    try:
        hull = ConvexHull(chart)
    except QhullError as exc:
        raise EmptyInteriorError(f"empty interior: {exc}") from exc
    normals, ok = _null_vectors(points[hull.simplices])
    normals = normals[ok]
    normals *= np.sign(normals @ inside)[:, None]
    return np.sort(hull.vertices), normals


def _hull_2d(points: np.ndarray, inside: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    perp = np.array([-inside[1], inside[0]])
    ang = np.arctan2(points @ perp, points @ inside)
    lo, hi = int(np.argmin(ang)), int(np.argmax(ang))
    normals = []
    for i in (lo, hi):
        nv = np.array([-points[i, 1], points[i, 0]])
        normals.append(nv * np.sign(nv @ inside))
    return np.unique([lo, hi]), np.asarray(normals)


def cone_hull(points: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Extreme generators and inward unit facet normals of ``cone(points)``.

    ``points`` are unit rows already de-duplicated. Returns ``(vertex_indices,
    normals)`` with normals merged within ``tol`` and sorted lexicographically.
    Raises if the cone is not pointed or not full-dimensional.
    """
    inside = check_pointed_full(points, tol)
    n, d = points.shape
    if d == 2:
        vidx, normals = _hull_2d(points, inside / np.linalg.norm(inside))
    elif d <= BRUTE_MAX_DIM and n <= BRUTE_MAX_POINTS:
        normals = _facets_brute(points)
        vidx = None
    else:
        vidx, normals = _hull_qhull(points, inside)
    normals = normalize_rows(normals)
    normals = normals[merge_close(normals, tol)]
    normals = normals[lex_order(normals)]
    if vidx is None:
        vidx = _extreme_from_facets(points, normals)
    return vidx, normals
