"""Proper spherical convex bodies: polytopes and finite intersections of caps.

Both kinds are described by constraints ``a_i . x >= k_i`` on unit vectors ``x``:
a polytope uses its hemisphere centres with ``k_i = 0``, a cap body uses cap
centres with ``k_i = cos(r_i)``. Membership, interior points and boundary
exits are written once against that form.
"""
from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np
from scipy.optimize import minimize

from . import kernels
from ._cone import cone_hull, lex_order, merge_close
from .errors import (
    DimensionMismatchError,
    EmptyInteriorError,
    GeometryError,
    ImproperBodyError,
    NotOnBoundaryError,
)
from .sphere import (
    DEFAULT_TOL,
    Cap,
    ToleranceConfig,
    as_points,
    normalize,
    normalize_rows,
    tangent_basis,
)


@dataclass(frozen=True, eq=False)
class SphericalPolytope:
    """Spherical polytope with vertex (V) and hemisphere-centre (H) descriptions.

    The body is ``{x : h . x >= 0 for every row h of hcenters}`` and also the
    spherical convex hull of ``vertices``. Instances built by :func:`s_conv` or
    :func:`from_hemispheres` are validated; the raw constructor trusts its input.
    """

    vertices: np.ndarray
    hcenters: np.ndarray

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def kind(self) -> str:
        return "polytope"

    @cached_property
    def constraints(self) -> tuple[np.ndarray, np.ndarray]:
        return self.hcenters, np.zeros(self.hcenters.shape[0])

    def summary(self) -> dict:
        return {"kind": "polytope", "dim": self.dim,
                "n_vertices": int(self.vertices.shape[0]),
                "n_hemispheres": int(self.hcenters.shape[0])}


@dataclass(frozen=True, eq=False)
class CapIntersectionBody:
    """Intersection of finitely many caps of radius at most pi/2."""

    caps: tuple[Cap, ...]

    @property
    def dim(self) -> int:
        return self.caps[0].dim

    @property
    def kind(self) -> str:
        return "caps"

    @cached_property
    def centers(self) -> np.ndarray:
        return np.array([c.center for c in self.caps])

    @cached_property
    def radii(self) -> np.ndarray:
        return np.array([c.radius for c in self.caps])

    @cached_property
    def constraints(self) -> tuple[np.ndarray, np.ndarray]:
        return self.centers, np.cos(self.radii)

    def summary(self) -> dict:
        return {"kind": "caps", "dim": self.dim, "n_caps": len(self.caps),
                "radii": [float(r) for r in self.radii]}


Body = Union[SphericalPolytope, CapIntersectionBody]


def _check_dim(body: Body, q: np.ndarray) -> None:
    if q.shape[-1] != body.dim:
        raise DimensionMismatchError(f"point dimension {q.shape[-1]} != body dimension {body.dim}")


def slack(body: Body, q) -> np.ndarray | float:
    """Smallest constraint slack ``min_i (a_i . q - k_i)``; negative means outside."""
    q = np.asarray(q, dtype=float)
    _check_dim(body, q)
    a, k = body.constraints
    s = (q @ a.T - k).min(axis=-1)
    return float(s) if np.ndim(s) == 0 else s


def contains(body: Body, q, tol: float = DEFAULT_TOL.tol_angle):
    s = slack(body, q)
    return bool(s >= -tol) if np.ndim(s) == 0 else s >= -tol


def s_conv(points, tol: ToleranceConfig = DEFAULT_TOL) -> SphericalPolytope:
    """Spherical convex hull of finitely many points.

    Raises :class:`ImproperBodyError` when no open hemisphere contains the points
    and :class:`EmptyInteriorError` when they span a lower-dimensional cone.
    """
    pts = normalize_rows(as_points(points))
    if pts.shape[1] < 2:
        raise DimensionMismatchError("need ambient dimension >= 2")
    # chord length equals the angle to first order at this scale
    pts = pts[merge_close(pts, tol.tol_angle)]
    vidx, normals = cone_hull(pts, tol.tol_angle)
    verts = pts[vidx]
    # + 0.0 turns negative zeros into positive ones for stable output
    return SphericalPolytope(verts[lex_order(verts)] + 0.0, normals + 0.0)


def from_hemispheres(centers, tol: ToleranceConfig = DEFAULT_TOL) -> SphericalPolytope:
    """Intersection of the closed hemispheres centred at ``centers``.

    Its vertices are the facet normals of the cone over the centres, i.e. the
    polar of their hull; the H-description keeps only the irredundant centres.
    """
    try:
        hull = s_conv(centers, tol)
    except ImproperBodyError as exc:
        raise EmptyInteriorError("empty interior: hemispheres meet in a lower-dimensional set") from exc
    except EmptyInteriorError as exc:
        raise ImproperBodyError("improper body: intersection is not inside an open hemisphere") from exc
    return SphericalPolytope(hull.hcenters, hull.vertices)


def _max_slack_point(a: np.ndarray, k: np.ndarray, starts: np.ndarray) -> tuple[np.ndarray, float]:
    d = a.shape[1]

    def neg(z):
        return -z[d]

    cons = [
        {"type": "ineq", "fun": lambda z: a @ z[:d] - k - z[d],
         "jac": lambda z: np.hstack([a, -np.ones((a.shape[0], 1))])},
        {"type": "eq", "fun": lambda z: np.array([z[:d] @ z[:d] - 1.0]),
         "jac": lambda z: np.hstack([2 * z[:d], 0.0])[None, :]},
    ]
    best_x, best_s = None, -np.inf
    for x0 in starts:
        z0 = np.append(x0, (a @ x0 - k).min())
        res = minimize(neg, z0, jac=lambda z: np.eye(d + 1)[d] * -1.0,
                       constraints=cons, method="SLSQP", options={"maxiter": 200})
        x = normalize(res.x[:d])
        s = float((a @ x - k).min())
        if s > best_s:
            best_x, best_s = x, s
    return best_x, best_s


def cap_body(caps, tol: ToleranceConfig = DEFAULT_TOL) -> CapIntersectionBody:
    """Validated intersection of caps: proper and with nonempty interior."""
    caps = tuple(caps)
    if not caps:
        raise GeometryError("a cap body needs at least one cap")
    dims = {c.dim for c in caps}
    if len(dims) != 1:
        raise DimensionMismatchError("caps live in different dimensions")
    if any(c.radius <= tol.tol_angle for c in caps):
        raise EmptyInteriorError("empty interior: degenerate cap")
    body = CapIntersectionBody(caps)
    if all(c.is_hemisphere for c in caps):
        from_hemispheres(body.centers, tol)  # raises unless proper with interior
    interior_point(body, tol)
    return body


def interior_point(body: Body, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """A point with strictly positive slack in every constraint.

    Tries the normalised vertex (or cap-centre) mean first and falls back to a
    maximal-slack search.
    """
    return _interior_cached(body, tol.tol_angle)


_MEMO: OrderedDict = OrderedDict()
_MEMO_SIZE = 128


def memo(body, tag, factory):
    """Per-body cache keyed by identity; bodies are immutable so results never go stale."""
    key = (id(body), tag)
    hit = _MEMO.get(key)
    if hit is not None and hit[0] is body:
        _MEMO.move_to_end(key)
        return hit[1]
    value = factory()
    _MEMO[key] = (body, value)
    if len(_MEMO) > _MEMO_SIZE:
        _MEMO.popitem(last=False)
    return value


def _interior_cached(body: Body, tol_angle: float) -> np.ndarray:
    return memo(body, ("interior", tol_angle), lambda: _find_interior(body, tol_angle))


def _find_interior(body: Body, tol_angle: float) -> np.ndarray:
    a, k = body.constraints
    gens = body.vertices if isinstance(body, SphericalPolytope) else body.centers
    mean = gens.sum(axis=0)
    c = None
    if np.linalg.norm(mean) > 0:
        c = normalize(mean)
        if (a @ c - k).min() <= tol_angle:
            c = None
    if c is None:
        starts = [normalize(mean)] if np.linalg.norm(mean) > 0 else []
        starts += list(gens)
        c, s = _max_slack_point(a, k, np.asarray(starts))
        if s <= tol_angle:
            raise EmptyInteriorError("empty interior: no strictly interior point found")
    return c


def exit_points(body: Body, c: np.ndarray, dirs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exit angle and exit point along ``cos(t) c + sin(t) u`` for each row ``u``."""
    a, k = body.constraints
    t = kernels.exit_angles(a, k, c, dirs)
    if not np.all(np.isfinite(t)) or np.any(t >= math.pi):
        raise ImproperBodyError("improper body: geodesic never leaves the body")
    pts = np.cos(t)[:, None] * c + np.sin(t)[:, None] * dirs
    return t, pts


def boundary_point(body: Body, c, u, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Where the geodesic leaving ``c`` in tangent direction ``u`` crosses the boundary."""
    c = np.asarray(c, dtype=float)
    u = np.asarray(u, dtype=float)
    _check_dim(body, c)
    _check_dim(body, u)
    if slack(body, c) <= tol.tol_angle:
        raise GeometryError("start point is not strictly interior")
    u = u - (u @ c) * c
    u = normalize(u)
    return exit_points(body, c, u[None, :])[1][0]


def boundary_sample(body: Body, m: int, seed: int = 0,
                    tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """``m`` boundary points along seeded uniformly random directions from the interior point."""
    if m == 0:
        return np.zeros((0, body.dim))
    c = interior_point(body, tol)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((m, body.dim))
    g -= np.outer(g @ c, c)
    return exit_points(body, c, normalize_rows(g))[1]


def supporting_centers(body: Body, p, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Centres ``Q`` of hemispheres containing ``body`` with ``p`` on their rim."""
    p = np.asarray(p, dtype=float)
    s = slack(body, p)
    if abs(s) > tol.tol_sample:
        raise NotOnBoundaryError(f"point is not on the boundary (slack {s:.3g})")
    a, k = body.constraints
    act = np.abs(a @ p - k) <= tol.tol_sample
    if isinstance(body, SphericalPolytope):
        return a[act].copy()
    q = a[act] - np.outer(a[act] @ p, p)
    return normalize_rows(q)


# -- parametrised boundary --------------------------------------------------


def _hyperspherical(angles: np.ndarray, dim: int) -> np.ndarray:
    """Unit vectors in R^dim from ``dim - 1`` hyperspherical angles per row."""
    n = angles.shape[0]
    out = np.ones((n, dim))
    s = np.ones(n)
    for j in range(dim - 1):
        out[:, j] = s * np.cos(angles[:, j])
        s = s * np.sin(angles[:, j])
    out[:, dim - 1] = s
    return out


class BoundaryChart:
    """Boundary of a body parametrised by the direction of exit from an interior point.

    For ambient dimension d the parameters are ``d - 2`` hyperspherical angles of
    the tangent direction; the last one is periodic.
    """

    def __init__(self, body: Body, n: int, tol: ToleranceConfig = DEFAULT_TOL):
        if body.dim < 3:
            raise GeometryError("boundary charts need ambient dimension >= 3")
        self.body = body
        self.center = interior_point(body, tol)
        self.basis = tangent_basis(self.center)
        npar = body.dim - 2
        if npar == 1:
            counts = [n]
        else:
            base = max(4, round((n / 2.0) ** (1.0 / npar)))
            counts = [base] * (npar - 1) + [2 * base]
        axes = []
        for j, cnt in enumerate(counts):
            if j == npar - 1:
                axes.append(2 * math.pi * np.arange(cnt) / cnt)
            else:
                axes.append(math.pi * (np.arange(cnt) + 0.5) / cnt)
        self.steps = np.array([ax[1] - ax[0] for ax in axes])
        mesh = np.meshgrid(*axes, indexing="ij")
        self.grid_params = np.column_stack([g.ravel() for g in mesh])
        self.grid_points = self.points(self.grid_params)

    def directions(self, params: np.ndarray) -> np.ndarray:
        return _hyperspherical(params, self.body.dim - 1) @ self.basis

    def points(self, params: np.ndarray) -> np.ndarray:
        return exit_points(self.body, self.center, self.directions(params))[1]

    def refine(self, objective, params: np.ndarray, iters: int = 40, sweeps: int = 2):
        """Coordinate-wise golden-section minimisation around each start.

        ``objective(rows, points)`` returns one value per row; rows index the
        batch so the objective can depend on a per-row anchor. The bracket for
        each coordinate is one grid step either side of the start.
        """
        params = np.array(params, dtype=float)
        rows = np.arange(params.shape[0])
        best = objective(rows, self.points(params))
        invphi = (math.sqrt(5.0) - 1.0) / 2.0
        for _ in range(sweeps):
            for j in range(params.shape[1]):
                lo = params[:, j] - self.steps[j]
                hi = params[:, j] + self.steps[j]

                def at(x):
                    p = params.copy()
                    p[:, j] = x
                    return objective(rows, self.points(p))

                x1 = hi - invphi * (hi - lo)
                x2 = lo + invphi * (hi - lo)
                f1, f2 = at(x1), at(x2)
                for _ in range(iters):
                    left = f1 < f2
                    hi = np.where(left, x2, hi)
                    lo = np.where(left, lo, x1)
                    nx1 = np.where(left, hi - invphi * (hi - lo), x2)
                    nx2 = np.where(left, x1, lo + invphi * (hi - lo))
                    fnew = at(np.where(left, nx1, nx2))
                    f1, f2 = np.where(left, fnew, f2), np.where(left, f1, fnew)
                    x1, x2 = nx1, nx2
                xm = np.where(f1 < f2, x1, x2)
                fm = np.minimum(f1, f2)
                better = fm < best
                params[better, j] = xm[better]
                best = np.where(better, fm, best)
        return params, best, self.points(params)


def hausdorff_upper(a: Body, b: Body, m: int, seed: int = 0,
                    tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Largest radial gap between two boundaries seen from a common interior point.

    This bounds the Hausdorff distance of the boundaries from above.
    """
    c = interior_point(a, tol)
    if slack(b, c) <= tol.tol_angle:
        c = interior_point(b, tol)
        if slack(a, c) <= tol.tol_angle:
            raise GeometryError("bodies share no common interior point")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((m, a.dim))
    g -= np.outer(g @ c, c)
    dirs = normalize_rows(g)
    ta = exit_points(a, c, dirs)[0]
    tb = exit_points(b, c, dirs)[0]
    return float(np.max(np.abs(ta - tb)))
