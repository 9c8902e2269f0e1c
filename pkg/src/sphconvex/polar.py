"""Spherical polar sets ``W° = ∩_{P in W} S_P^+`` of proper bodies."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bodies import (
    Body,
    SphericalPolytope,
    boundary_sample,
    cap_body,
    memo,
    s_conv,
    slack,
    supporting_centers,
)
from .errors import DimensionMismatchError, GeometryError
from .sphere import DEFAULT_TOL, HALF_PI, ToleranceConfig, cap_polar


def polar_polytope(poly: SphericalPolytope) -> SphericalPolytope:
    """Polar of a polytope: the vertex and hemisphere descriptions trade places."""
    return SphericalPolytope(poly.hcenters, poly.vertices)


def polar_body(body: Body, tol: ToleranceConfig = DEFAULT_TOL) -> SphericalPolytope:
    """Polar of a body, as a polytope.

    For a cap body ``∩ cap(c_i, r_i)`` the polar is the spherical convex hull of the
    caps ``cap(c_i, pi/2 - r_i)``; it is materialised from ``boundary_samples``
    points on each of those caps, so the result is an inner approximation.
    """
    if isinstance(body, SphericalPolytope):
        return polar_polytope(body)

    def build():
        pts = np.vstack([cap_polar(c).boundary(tol.boundary_samples, seed=tol.seed)
                         for c in body.caps])
        return s_conv(pts, tol)

    return memo(body, ("polar", tol.boundary_samples, tol.seed, tol.tol_angle), build)


def polar_membership(body: Body, q, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """``q ∈ body°`` tested from the definition: ``q . x >= 0`` on the body."""
    q = np.asarray(q, dtype=float)
    if q.shape[-1] != body.dim:
        raise DimensionMismatchError("dimension mismatch")
    if isinstance(body, SphericalPolytope):
        pts = body.vertices
    else:
        pts = boundary_sample(body, tol.boundary_samples, tol.seed, tol)
    return bool(np.min(pts @ q) >= -tol.tol_sample)


@dataclass
class Lemma22Report:
    check: str
    body_summary: dict
    samples: int
    max_violation: float
    passed: bool

    def to_dict(self) -> dict:
        return {"check": self.check, "body_summary": self.body_summary,
                "samples": self.samples, "max_violation": self.max_violation,
                "pass": self.passed}


def check_lemma_2_2(body: Body, samples: int | None = None, seed: int = 0,
                    tol: ToleranceConfig = DEFAULT_TOL) -> Lemma22Report:
    """Centres of hemispheres supporting ``body°`` must lie on the boundary of ``body``.

    The violation of a centre ``Q`` is ``|slack(body, Q)|``: zero exactly when
    ``Q`` is on the boundary, positive inside, and it also catches points outside.
    """
    m = tol.boundary_samples if samples is None else samples
    pol = polar_body(body, tol)
    pts = boundary_sample(pol, m, seed, tol)
    worst = 0.0
    for p in pts:
        centers = supporting_centers(pol, p, tol)
        if centers.shape[0] == 0:
            raise GeometryError("boundary point with no supporting hemisphere")
        worst = max(worst, float(np.max(np.abs(slack(body, centers)))))
    return Lemma22Report("lemma_2_2", body.summary(), int(m), worst, worst <= tol.tol_sample)


def polar_exact(body: Body, tol: ToleranceConfig = DEFAULT_TOL) -> Body:
    """Polar as a body: a single cap maps to its complementary cap, everything else
    goes through :func:`polar_body`."""
    if not isinstance(body, SphericalPolytope) and len(body.caps) == 1:
        cap = body.caps[0]
        if 0.0 < cap.radius < HALF_PI:
            return cap_body([cap_polar(cap)], tol)
    return polar_body(body, tol)
