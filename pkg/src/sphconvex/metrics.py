"""Diameter, width and thickness of proper bodies, and constancy checks.

Farthest points drive everything. For a polytope they are exact: when every
vertex is within pi/2 of the anchor the farthest point is a vertex, otherwise it
is the normalised projection of the antipode onto the cone over the vertices.
For cap bodies they come from a boundary grid refined by golden-section search.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .bodies import (
    BoundaryChart,
    Body,
    SphericalPolytope,
    boundary_sample,
    memo,
    slack,
)
from .errors import GeometryError, NotSupportingError
from .polar import polar_body
from .sphere import DEFAULT_TOL, ToleranceConfig, as_points, clamped_arccos, normalize

N_RESTARTS = 8
_ALTERNATION_LIMIT = 200


@dataclass
class WidthReport:
    value: float
    witness_pair: tuple[np.ndarray, np.ndarray]
    method: str
    cross_check: float | None = None

    def to_dict(self) -> dict:
        return {"value": self.value, "method": self.method,
                "witness_pair": [p.tolist() for p in self.witness_pair],
                "cross_check": self.cross_check}


@dataclass
class ConstancyReport:
    is_constant: bool
    tau: float
    max_deviation: float
    samples_used: int
    tolerance: float

    def to_dict(self) -> dict:
        return {"is_constant": self.is_constant, "tau": self.tau,
                "max_deviation": self.max_deviation, "samples_used": self.samples_used,
                "tolerance": self.tolerance}


def _chart(body: Body, tol: ToleranceConfig) -> BoundaryChart:
    return memo(body, ("chart", tol.boundary_samples, tol.tol_angle),
                lambda: BoundaryChart(body, tol.boundary_samples, tol))


def _rowdot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->i", a, b)


def _farthest_polytope(poly: SphericalPolytope, anchors: np.ndarray):
    verts = poly.vertices
    cosines, idx = kernels.min_dot_rows(anchors, verts)
    pts = verts[idx].copy()
    far = np.flatnonzero(cosines < 0.0)
    if far.size:
        proj = kernels.cone_project(-anchors[far], verts)
        norms = np.linalg.norm(proj, axis=1)
        better = norms > -cosines[far]
        sel = far[better]
        cosines[sel] = -norms[better]
        pts[sel] = proj[better] / norms[better, None]
    return clamped_arccos(cosines), pts


def _farthest_caps(body: Body, anchors: np.ndarray, tol: ToleranceConfig):
    chart = _chart(body, tol)
    _, idx = kernels.min_dot_rows(anchors, chart.grid_points)
    params, best, pts = chart.refine(lambda rows, p: _rowdot(anchors[rows], p),
                                     chart.grid_params[idx])
    # the only interior critical point is the antipode, at distance pi
    inside = slack(body, -anchors) >= 0.0
    best[inside] = -1.0
    pts[inside] = -anchors[inside]
    return clamped_arccos(best), pts


def farthest_many(body: Body, anchors, tol: ToleranceConfig = DEFAULT_TOL):
    """Largest distance from each anchor to the body, with the attaining points."""
    anchors = as_points(anchors, body.dim)
    if anchors.shape[0] == 0:
        return np.zeros(0), np.zeros((0, body.dim))
    if isinstance(body, SphericalPolytope):
        return _farthest_polytope(body, anchors)
    return _farthest_caps(body, anchors, tol)


def farthest_point(body: Body, p, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[np.ndarray, float]:
    ang, pts = farthest_many(body, normalize(p)[None, :], tol)
    return pts[0], float(ang[0])


def _alternate(body: Body, starts: np.ndarray, tol: ToleranceConfig):
    """Alternate farthest-point steps from several starts; best pair found."""
    ang, q = farthest_many(body, starts, tol)
    p = starts.copy()
    for _ in range(_ALTERNATION_LIMIT):
        ang2, p2 = farthest_many(body, q, tol)
        improved = ang2 > ang + tol.tol_angle
        if not improved.any():
            break
        ang = np.where(improved, ang2, ang)
        p, q = np.where(improved[:, None], q, p), np.where(improved[:, None], p2, q)
    i = int(np.argmax(ang))
    return float(ang[i]), p[i], q[i]


def diameter(body: Body, tol: ToleranceConfig = DEFAULT_TOL) -> WidthReport:
    """Largest distance between two points of the body."""
    return memo(body, ("diameter", tol), lambda: _diameter(body, tol))


def _diameter(body: Body, tol: ToleranceConfig) -> WidthReport:
    if isinstance(body, SphericalPolytope):
        verts = body.vertices
        cosines, idx = kernels.min_dot_rows(verts, verts)
        i = int(np.argmin(cosines))
        if cosines[i] >= 0.0:
            # all pairwise angles <= pi/2: the extreme pair is a vertex pair
            return WidthReport(float(clamped_arccos(cosines[i])), (verts[i], verts[idx[i]]),
                               "exact_vertices")
        starts = verts[np.argsort(cosines)[:N_RESTARTS]]
        val, p, q = _alternate(body, starts, tol)
        return WidthReport(val, (p, q), "exact_projection")
    chart = _chart(body, tol)
    ang, _ = farthest_many(body, chart.grid_points, tol)
    starts = chart.grid_points[np.argsort(-ang)[:N_RESTARTS]]
    val, p, q = _alternate(body, starts, tol)
    return WidthReport(val, (p, q), "sampled")


def _support_gap(body: Body, p: np.ndarray, tol: ToleranceConfig) -> float:
    """``min_{x in body} p . x``; zero exactly when ``S_p^+`` supports the body."""
    if isinstance(body, SphericalPolytope):
        return float(np.min(body.vertices @ p))
    ang, _ = farthest_many(body, p[None, :], tol)
    return float(math.cos(ang[0]))


def _width_direct(body: Body, p: np.ndarray, tol: ToleranceConfig, seed: int) -> float:
    """``pi - max |pq|`` over unit ``q`` with ``q . x >= 0`` on the body, by SLSQP restarts."""
    if isinstance(body, SphericalPolytope):
        xs = body.vertices
    else:
        xs = _chart(body, tol).grid_points
    d = body.dim
    cons = [
        {"type": "ineq", "fun": lambda q: xs @ q, "jac": lambda q: xs},
        {"type": "eq", "fun": lambda q: np.array([q @ q - 1.0]), "jac": lambda q: 2.0 * q[None, :]},
    ]
    rng = np.random.default_rng(seed)
    starts = [p] + [normalize(p + 0.7 * rng.standard_normal(d)) for _ in range(N_RESTARTS - 1)]
    best = np.inf
    for q0 in starts:
        res = minimize(lambda q: p @ q, q0, jac=lambda q: p, constraints=cons,
                       method="SLSQP", options={"maxiter": 300, "ftol": 1e-12})
        q = normalize(res.x)
        if np.min(xs @ q) >= -1e-9:
            best = min(best, float(p @ q))
    if not np.isfinite(best):
        raise GeometryError("direct width search found no feasible point")
    return math.pi - float(clamped_arccos(best))


def width_wrt(body: Body, p, tol: ToleranceConfig = DEFAULT_TOL,
              cross_check: bool = False) -> WidthReport:
    """Width of the body with respect to the supporting hemisphere centred at ``p``.

    Equals ``pi - max{|pq| : q in body°}``. The reported value comes from the
    farthest point of the materialised polar; with ``cross_check`` it is also
    computed by constrained optimisation over the body's own points.
    """
    p = normalize(p)
    gap = _support_gap(body, p, tol)
    if abs(gap) > tol.tol_sample:
        raise NotSupportingError(f"hemisphere does not support the body (gap {gap:.3g})")
    q, ang = farthest_point(polar_body(body, tol), p, tol)
    rep = WidthReport(math.pi - ang, (p, q), "exact_vertices"
                      if isinstance(body, SphericalPolytope) else "sampled")
    if cross_check:
        rep.cross_check = _width_direct(body, p, tol, tol.seed)
    return rep


def sampled_thickness(body: Body, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[float, np.ndarray]:
    """Minimum of ``width_wrt`` over supporting centres on a refined boundary grid of the polar."""
    pol = polar_body(body, tol)
    chart = _chart(pol, tol)
    ang, _ = farthest_many(pol, chart.grid_points, tol)
    order = np.argsort(-ang)[:N_RESTARTS]

    def objective(rows, pts):
        return -farthest_many(pol, pts, tol)[0]

    params, best, pts = chart.refine(objective, chart.grid_params[order])
    i = int(np.argmin(best))
    return math.pi + float(best[i]), pts[i]


def thickness(body: Body, tol: ToleranceConfig = DEFAULT_TOL) -> WidthReport:
    """Minimum width, computed as ``pi - diameter(polar)``; ``cross_check`` holds
    the minimum of sampled widths over supporting hemispheres."""
    pol = polar_body(body, tol)
    dp = diameter(pol, tol)
    sampled, _ = sampled_thickness(body, tol)
    return WidthReport(math.pi - dp.value, dp.witness_pair, dp.method, sampled)


def is_constant_diameter(body: Body, tol: float | None = None,
                         cfg: ToleranceConfig = DEFAULT_TOL,
                         samples: int | None = None) -> ConstancyReport:
    """Every sampled boundary point must have a body point at distance ``diam``."""
    tol = cfg.tol_constancy if tol is None else tol
    m = cfg.boundary_samples if samples is None else samples
    tau = diameter(body, cfg).value
    if tau > math.pi - cfg.tol_sample:
        raise GeometryError("diameter too close to pi for width analysis")
    pts = boundary_sample(body, m, cfg.seed, cfg)
    ang, _ = farthest_many(body, pts, cfg)
    dev = float(max(0.0, np.max(tau - ang)))
    return ConstancyReport(dev <= tol, tau, dev, m, tol)


def width_samples(body: Body, m: int, cfg: ToleranceConfig = DEFAULT_TOL):
    """Supporting centres sampled on the polar boundary and the widths they give."""
    pol = polar_body(body, cfg)
    centers = boundary_sample(pol, m, cfg.seed, cfg)
    ang, _ = farthest_many(pol, centers, cfg)
    return centers, math.pi - ang


def is_constant_width(body: Body, tol: float | None = None,
                      cfg: ToleranceConfig = DEFAULT_TOL,
                      samples: int | None = None) -> ConstancyReport:
    """All sampled widths must agree to within ``tol``; ``tau`` is their mean."""
    tol = cfg.tol_constancy if tol is None else tol
    m = cfg.boundary_samples if samples is None else samples
    _, widths = width_samples(body, m, cfg)
    if np.min(widths) < cfg.tol_sample:
        raise GeometryError("polar diameter too close to pi for width analysis")
    spread = float(np.max(widths) - np.min(widths))
    return ConstancyReport(spread <= tol, float(np.mean(widths)), spread, m, tol)


@dataclass
class Theorem1Report:
    constant_width: ConstancyReport
    constant_diameter: ConstancyReport
    polar_width: ConstancyReport | None = None
    polar_diameter: ConstancyReport | None = None
    notes: list[str] = field(default_factory=list)
    passed: bool = False

    def to_dict(self) -> dict:
        out = {"constant_width": self.constant_width.to_dict(),
               "constant_diameter": self.constant_diameter.to_dict(),
               "notes": self.notes, "pass": self.passed}
        if self.polar_width is not None:
            out["polar_width"] = self.polar_width.to_dict()
            out["polar_diameter"] = self.polar_diameter.to_dict()
        return out


def verify_theorem_1(body: Body, tol: float | None = None,
                     cfg: ToleranceConfig = DEFAULT_TOL) -> Theorem1Report:
    """Constant width and constant diameter verdicts must agree, with equal tau.

    When the body has constant width tau its polar is also checked for constant
    width and constant diameter pi - tau.
    """
    tol = cfg.tol_constancy if tol is None else tol
    cw = is_constant_width(body, tol, cfg)
    cd = is_constant_diameter(body, tol, cfg)
    rep = Theorem1Report(cw, cd)
    ok = cw.is_constant == cd.is_constant
    if not ok:
        rep.notes.append("constant width and constant diameter verdicts disagree")
    if cw.is_constant and cd.is_constant and abs(cw.tau - cd.tau) > tol:
        ok = False
        rep.notes.append("width and diameter constants differ")
    if cw.is_constant:
        pol = polar_body(body, cfg)
        rep.polar_width = is_constant_width(pol, tol, cfg)
        rep.polar_diameter = is_constant_diameter(pol, tol, cfg)
        target = math.pi - cw.tau
        for name, r in (("polar width", rep.polar_width), ("polar diameter", rep.polar_diameter)):
            if not r.is_constant or abs(r.tau - target) > tol:
                ok = False
                rep.notes.append(f"{name} is not constant pi - tau")
    rep.passed = ok
    return rep
