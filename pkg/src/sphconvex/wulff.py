"""Wulff shapes of sampled support functions and their spherical lifts.

A Wulff shape ``W = {x : x . theta_i <= gamma_i}`` in R^{n+1} is lifted to the
open north hemisphere of S^{n+1} by ``x -> normalize((x, 1))``; the halfspace
``x . theta <= gamma`` becomes the hemisphere centred at ``normalize((-theta, gamma))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import HalfspaceIntersection, QhullError

from ._cone import merge_close
from .bodies import SphericalPolytope, from_hemispheres, memo
from .errors import (
    DimensionMismatchError,
    EquatorSingularityError,
    GeometryError,
    UnboundedWulffError,
)
from .metrics import diameter, is_constant_diameter, is_constant_width, sampled_thickness
from .polar import polar_polytope
from .sphere import DEFAULT_TOL, ToleranceConfig, direction_grid, normalize_rows

PROVENANCES = ("constant", "file", "perturbed", "derived")
EQUATOR_TOL = 1e-9


def positively_spans(directions: np.ndarray) -> bool:
    """True when no nonzero ``w`` has ``w . theta_i <= 0`` for every direction.

    Equivalent to full rank plus a strictly positive combination summing to zero.
    """
    n, d = directions.shape
    if n <= d or np.linalg.matrix_rank(directions) < d:
        return False
    res = linprog(np.zeros(n), A_eq=directions.T, b_eq=np.zeros(d),
                  bounds=[(1.0, None)] * n, method="highs")
    return res.status == 0


class GammaField:
    """Positive samples ``gamma(theta_i)`` of a support function on S^n."""

    def __init__(self, directions, values, provenance: str = "file", tol: float = 1e-9):
        dirs = np.asarray(directions, dtype=float)
        vals = np.asarray(values, dtype=float).reshape(-1)
        if dirs.ndim != 2 or dirs.shape[1] < 2:
            raise DimensionMismatchError("directions must be an (m, d) array with d >= 2")
        if dirs.shape[0] != vals.shape[0]:
            raise DimensionMismatchError("directions and values differ in length")
        if provenance not in PROVENANCES:
            raise GeometryError(f"unknown provenance {provenance!r}")
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0.0):
            raise GeometryError("gamma values must be positive")
        dirs = normalize_rows(dirs)
        if merge_close(dirs, tol).shape[0] != dirs.shape[0]:
            raise GeometryError("gamma directions must be pairwise distinct")
        if not positively_spans(dirs):
            raise UnboundedWulffError("unbounded Wulff shape: directions do not positively span")
        self.directions = dirs
        self.values = vals
        self.provenance = provenance

    @property
    def dim(self) -> int:
        return self.directions.shape[1]

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class WulffPolytope:
    """``{x : x . normals_i <= offsets_i}``; redundant halfspaces are kept."""

    normals: np.ndarray
    offsets: np.ndarray

    @property
    def dim(self) -> int:
        return self.normals.shape[1]

    @cached_property
    def redundant(self) -> np.ndarray:
        """Mask of halfspaces that do not contribute a facet."""
        lifted = lift_halfspaces(self)
        facets = spherical_wulff(self).polytope.hcenters
        gap = np.min(np.linalg.norm(lifted[:, None, :] - facets[None, :, :], axis=2), axis=1)
        return gap > 1e-7


def build_wulff(g: GammaField) -> WulffPolytope:
    return WulffPolytope(g.directions.copy(), g.values.copy())


def radial(w: WulffPolytope, theta) -> np.ndarray | float:
    """``max{lam > 0 : lam * theta in W}`` for one direction or a batch of rows."""
    t = np.asarray(theta, dtype=float)
    single = t.ndim == 1
    t = normalize_rows(np.atleast_2d(t))
    dots = t @ w.normals.T
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(dots > 0.0, w.offsets[None, :] / dots, np.inf)
    rho = ratios.min(axis=1)
    return float(rho[0]) if single else rho


def dual_gamma(w: WulffPolytope, dirs) -> GammaField:
    """Samples of ``1 / rho_W(-theta)`` on ``dirs``."""
    dirs = normalize_rows(np.asarray(dirs, dtype=float))
    return GammaField(dirs, 1.0 / radial(w, -dirs), "derived")


def dual_wulff(w: WulffPolytope, dirs) -> WulffPolytope:
    """Wulff shape of the sampled dual support function; an outer approximation."""
    return build_wulff(dual_gamma(w, dirs))


def support_function_lp(w: WulffPolytope, u) -> np.ndarray:
    """``h_W(u) = max{u . x : x in W}``, one linear program per row of ``u``."""
    u = np.atleast_2d(np.asarray(u, dtype=float))
    out = np.empty(u.shape[0])
    for i, row in enumerate(u):
        res = linprog(-row, A_ub=w.normals, b_ub=w.offsets,
                      bounds=[(None, None)] * w.dim, method="highs")
        if res.status != 0:
            raise UnboundedWulffError("support function LP did not converge")
        out[i] = -res.fun
    return out


def halfspace_vertices(w: WulffPolytope) -> np.ndarray:
    """Vertices of ``W`` from qhull's halfspace intersection about the origin."""
    def build():
        hs = np.column_stack([w.normals, -w.offsets])
        try:
            return HalfspaceIntersection(hs, np.zeros(w.dim)).intersections
        except QhullError as exc:
            raise UnboundedWulffError(f"halfspace intersection failed: {exc}") from exc

    return memo(w, "hs_vertices", build)


def support_function(w: WulffPolytope, u) -> np.ndarray:
    """``h_W(u) = max{u . x : x in W}`` per row of ``u``, as a maximum over vertices."""
    u = np.atleast_2d(np.asarray(u, dtype=float))
    return np.max(u @ halfspace_vertices(w).T, axis=1)


def dual_radial(w: WulffPolytope, theta) -> np.ndarray:
    """Radial function of the dual Wulff shape, ``1 / h_W(-theta)``, computed directly."""
    t = normalize_rows(np.atleast_2d(np.asarray(theta, dtype=float)))
    return 1.0 / support_function(w, -t)


def central_project(x) -> np.ndarray:
    """``normalize((x, 1))``: the point of the open north hemisphere above ``x``."""
    x = np.asarray(x, dtype=float)
    ones = np.ones(x.shape[:-1] + (1,))
    y = np.concatenate([x, ones], axis=-1)
    return y / np.linalg.norm(y, axis=-1, keepdims=True)


def central_unproject(p, tol: float = EQUATOR_TOL) -> np.ndarray:
    """Inverse of :func:`central_project`; rejects points on or below the equator."""
    p = np.asarray(p, dtype=float)
    last = p[..., -1:]
    if np.any(last <= tol):
        raise EquatorSingularityError("equator singularity: point not in the open north hemisphere")
    return p[..., :-1] / last


def lift_halfspaces(w: WulffPolytope) -> np.ndarray:
    """Hemisphere centres ``normalize((-theta_i, gamma_i))`` of the lifted halfspaces."""
    return normalize_rows(np.column_stack([-w.normals, w.offsets]))


@dataclass(frozen=True)
class SphericalWulffShape:
    polytope: SphericalPolytope
    north: bool = True

    @property
    def dim(self) -> int:
        return self.polytope.dim


def spherical_wulff(w: WulffPolytope, tol: ToleranceConfig = DEFAULT_TOL) -> SphericalWulffShape:
    """Lift of ``W`` to S^{n+1} as a spherical polytope in the open north hemisphere."""
    def build():
        poly = from_hemispheres(lift_halfspaces(w), tol)
        if np.any(poly.vertices[:, -1] <= EQUATOR_TOL):
            raise UnboundedWulffError("lifted Wulff shape reaches the equator")
        return SphericalWulffShape(poly, True)

    return memo(w, ("lift", tol.tol_angle), build)


def flatten(poly: SphericalPolytope) -> WulffPolytope:
    """Euclidean polytope whose lift is ``poly``; requires the north pole strictly inside.

    A hemisphere centre ``(a, b)`` contains ``normalize((x, 1))`` iff
    ``x . (-a) <= b``, i.e. the halfspace with unit normal ``-a/|a|`` and offset ``b/|a|``.
    """
    a, b = poly.hcenters[:, :-1], poly.hcenters[:, -1]
    if np.any(b <= EQUATOR_TOL):
        raise EquatorSingularityError("north pole is not interior to the body")
    norms = np.linalg.norm(a, axis=1)
    return WulffPolytope(-a / norms[:, None], b / norms)


def wulff_vertices(w: WulffPolytope, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Exact vertices of ``W``, recovered from the vertices of its lift."""
    return central_unproject(spherical_wulff(w, tol).polytope.vertices)


def euclidean_polar(w: WulffPolytope, tol: ToleranceConfig = DEFAULT_TOL) -> WulffPolytope:
    """``W° = {x : x . y <= 1 for all y in W}`` with one halfspace per vertex of ``W``."""
    v = wulff_vertices(w, tol)
    norms = np.linalg.norm(v, axis=1)
    return WulffPolytope(v / norms[:, None], 1.0 / norms)


def reflect(w: WulffPolytope) -> WulffPolytope:
    return WulffPolytope(-w.normals, w.offsets)


def evaluation_grid(g: GammaField, n: int = 200) -> np.ndarray:
    """Directions where radial functions are compared: the field's own plus a fixed grid."""
    return np.vstack([g.directions, direction_grid(g.dim, n)])


def _rel_gap(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b) / np.minimum(a, b)))


@dataclass
class Prop33Report:
    check: str
    directions: int
    max_rel_error: float
    polar_max_rel_error: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {"check": self.check, "directions": self.directions,
                "max_rel_error": self.max_rel_error,
                "polar_max_rel_error": self.polar_max_rel_error,
                "tolerance": self.tolerance, "pass": self.passed}


def check_prop_3_3(g: GammaField, tol: float | None = None,
                   cfg: ToleranceConfig = DEFAULT_TOL, grid: int = 200) -> Prop33Report:
    """Dual Wulff shape two ways: directly by LP, and by lifting, taking the spherical
    polar and flattening back. Also compares against the reflected Euclidean polar."""
    tol = 5.0 * cfg.tol_sample if tol is None else tol
    w = build_wulff(g)
    dirs = evaluation_grid(g, grid)
    direct = dual_radial(w, dirs)
    lifted_polar = polar_polytope(spherical_wulff(w, cfg).polytope)
    via_sphere = radial(flatten(lifted_polar), dirs)
    via_polar = radial(reflect(euclidean_polar(w, cfg)), dirs)
    err = _rel_gap(direct, via_sphere)
    err_polar = _rel_gap(direct, via_polar)
    return Prop33Report("prop_3_3", int(dirs.shape[0]), err, err_polar, tol,
                        err <= tol and err_polar <= tol)


@dataclass
class SelfDualReport:
    radial_gap: float
    radial_verdict: bool
    width: dict
    width_verdict: bool
    diameter: dict
    diameter_verdict: bool
    tolerance: float
    consistent: bool

    @property
    def verdict(self) -> bool:
        return self.radial_verdict and self.width_verdict and self.diameter_verdict

    def to_dict(self) -> dict:
        return {"check": "self_dual", "radial_gap": self.radial_gap,
                "radial_verdict": self.radial_verdict, "width": self.width,
                "width_verdict": self.width_verdict, "diameter": self.diameter,
                "diameter_verdict": self.diameter_verdict, "tolerance": self.tolerance,
                "self_dual": self.verdict, "consistent": self.consistent,
                "pass": self.consistent}


def check_self_dual(g: GammaField, tol: float | None = None,
                    cfg: ToleranceConfig = DEFAULT_TOL, grid: int = 200) -> SelfDualReport:
    """Three verdicts on self-duality that must agree: ``W`` and its dual have equal
    radial functions; the lift has constant width pi/2; the lift has constant diameter pi/2."""
    tol = cfg.tol_constancy if tol is None else tol
    w = build_wulff(g)
    dirs = evaluation_grid(g, grid)
    gap = _rel_gap(radial(w, dirs), dual_radial(w, dirs))
    lift = spherical_wulff(w, cfg).polytope
    cw = is_constant_width(lift, tol, cfg)
    cd = is_constant_diameter(lift, tol, cfg)
    v1 = gap <= tol
    v2 = cw.is_constant and abs(cw.tau - math.pi / 2) <= tol
    v3 = cd.is_constant and abs(cd.tau - math.pi / 2) <= tol
    return SelfDualReport(gap, v1, cw.to_dict(), v2, cd.to_dict(), v3, tol, v1 == v2 == v3)


@dataclass
class Cor32Report:
    hypothesis_met: bool
    values: dict = field(default_factory=dict)
    sums: dict = field(default_factory=dict)
    tolerance: float = 0.0
    passed: bool = False
    note: str = ""

    def to_dict(self) -> dict:
        return {"check": "cor_3_2", "hypothesis_met": self.hypothesis_met,
                "values": self.values, "sums": self.sums, "tolerance": self.tolerance,
                "note": self.note, "pass": self.passed}


def corollary_3_2_report(g: GammaField, tol: float = 1e-2,
                         cfg: ToleranceConfig = DEFAULT_TOL) -> Cor32Report:
    """For a lift of constant width, thickness and diameter of it and its polar pair up to pi.

    Thicknesses here are minima of sampled widths, independent of the polar
    diameters, so the four sums are genuine checks.
    """
    w = build_wulff(g)
    lift = spherical_wulff(w, cfg).polytope
    cw = is_constant_width(lift, cfg.tol_constancy, cfg)
    if not cw.is_constant:
        return Cor32Report(False, {"width_spread": cw.max_deviation}, {}, tol, False,
                           "hypothesis not met: spherical Wulff shape is not of constant width")
    pol = polar_polytope(lift)
    vals = {
        "thickness": sampled_thickness(lift, cfg)[0],
        "diameter": diameter(lift, cfg).value,
        "polar_thickness": sampled_thickness(pol, cfg)[0],
        "polar_diameter": diameter(pol, cfg).value,
    }
    sums = {
        "thickness+polar_diameter": vals["thickness"] + vals["polar_diameter"],
        "thickness+polar_thickness": vals["thickness"] + vals["polar_thickness"],
        "diameter+polar_thickness": vals["diameter"] + vals["polar_thickness"],
        "diameter+polar_diameter": vals["diameter"] + vals["polar_diameter"],
    }
    ok = all(abs(s - math.pi) <= tol for s in sums.values())
    return Cor32Report(True, vals, sums, tol, ok)

