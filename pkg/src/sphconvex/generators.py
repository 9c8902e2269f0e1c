"""Body and support-function families with known answers."""
from __future__ import annotations

import math

import numpy as np

from .bodies import Body, CapIntersectionBody, cap_body, s_conv
from .errors import GeometryError
from .polar import polar_body
from .sphere import (
    DEFAULT_TOL,
    HALF_PI,
    Cap,
    ToleranceConfig,
    direction_grid,
    normalize,
    normalize_rows,
    tangent_basis,
)


def north(dim: int) -> np.ndarray:
    e = np.zeros(dim)
    e[-1] = 1.0
    return e


def gen_cap(center, r: float, tol: ToleranceConfig = DEFAULT_TOL) -> CapIntersectionBody:
    """Single cap; it has constant width and constant diameter ``2r``."""
    if not (0.0 < r < HALF_PI):
        raise GeometryError(f"cap radius {r} outside (0, pi/2)")
    return cap_body([Cap(center, r)], tol)


def gen_orthant(dim: int, tol: ToleranceConfig = DEFAULT_TOL):
    """Positive orthant of S^{dim-1}, a self-polar body of constant width pi/2."""
    if dim < 3:
        raise GeometryError("orthant generator needs dim >= 3")
    return s_conv(np.eye(dim), tol)


def reuleaux_circumradius(tau: float) -> float:
    """Circumradius of the equilateral spherical triangle of side ``tau``.

    From the spherical law of cosines with the circumcentre at the pole and the
    vertices 120 degrees apart in longitude: ``cos tau = 1 - 3/2 sin^2 R``.
    """
    return math.asin(math.sqrt(2.0 * (1.0 - math.cos(tau)) / 3.0))


def reuleaux_vertices(tau: float) -> np.ndarray:
    rad = reuleaux_circumradius(tau)
    ang = 2.0 * math.pi * np.arange(3) / 3.0
    return np.column_stack([math.sin(rad) * np.cos(ang), math.sin(rad) * np.sin(ang),
                            np.full(3, math.cos(rad))])


def gen_reuleaux(tau: float, tol: ToleranceConfig = DEFAULT_TOL) -> Body:
    """Spherical Reuleaux triangle of constant width ``tau`` on S^2, centred at the north pole.

    For ``tau <= pi/2`` it is the intersection of the three caps of radius ``tau``
    around the vertices of an equilateral triangle of side ``tau``. Wider ones are
    obtained as polars of the narrower ones, whose width is ``pi - tau``.
    """
    if not (0.0 < tau < math.pi):
        raise GeometryError(f"Reuleaux width {tau} outside (0, pi)")
    if tau > HALF_PI:
        return polar_body(gen_reuleaux(math.pi - tau, tol), tol)
    return cap_body([Cap(v, tau) for v in reuleaux_vertices(tau)], tol)


def sample_in_cap(rng: np.random.Generator, center, spread: float, m: int) -> np.ndarray:
    """``m`` points uniformly distributed in ``cap(center, spread)``."""
    center = normalize(center)
    d = center.shape[0]
    angles = np.empty(0)
    # polar angle has density proportional to sin^(d-2)
    while angles.size < m:
        t = rng.uniform(0.0, spread, 4 * m)
        keep = rng.uniform(0.0, 1.0, 4 * m) <= (np.sin(t) / math.sin(min(spread, HALF_PI))) ** (d - 2)
        angles = np.concatenate([angles, t[keep]])
    angles = angles[:m]
    tangent = normalize_rows(rng.standard_normal((m, d - 1))) @ tangent_basis(center)
    return np.cos(angles)[:, None] * center + np.sin(angles)[:, None] * tangent


def gen_random_polytope(dim: int, m: int, spread: float, seed: int,
                        tol: ToleranceConfig = DEFAULT_TOL):
    """Spherical hull of ``m`` seeded uniform points in a cap of radius ``spread``."""
    if m < dim:
        raise GeometryError("need at least dim points")
    if not (0.0 < spread < HALF_PI):
        raise GeometryError("spread must lie in (0, pi/2)")
    rng = np.random.default_rng(seed)
    center = normalize(rng.standard_normal(dim))
    for _ in range(16):
        try:
            return s_conv(sample_in_cap(rng, center, spread, m), tol)
        except GeometryError:
            continue
    raise GeometryError("could not draw a non-degenerate random polytope")


def gen_gamma(kind: str, dim: int = 3, grid: int = 200, value: float = 1.0,
              amplitude: float = 0.2, seed: int = 0):
    """Support-function samples: ``constant``, ``perturbed`` or ``cube``.

    ``perturbed`` multiplies ``value`` by ``1 + amplitude * u`` with ``u`` uniform
    in ``[-1, 1]`` per grid direction.
    """
    from .wulff import GammaField

    if value <= 0:
        raise GeometryError("gamma values must be positive")
    if kind == "constant":
        dirs = direction_grid(dim, grid)
        return GammaField(dirs, np.full(dirs.shape[0], float(value)), "constant")
    if kind == "perturbed":
        if not (0.0 <= amplitude < 1.0):
            raise GeometryError("perturbation amplitude must lie in [0, 1)")
        dirs = direction_grid(dim, grid)
        rng = np.random.default_rng(seed)
        vals = value * (1.0 + amplitude * rng.uniform(-1.0, 1.0, dirs.shape[0]))
        return GammaField(dirs, vals, "perturbed")
    if kind == "cube":
        dirs = np.vstack([np.eye(dim), -np.eye(dim)])
        return GammaField(dirs, np.full(2 * dim, float(value)), "constant")
    raise GeometryError(f"unknown gamma family {kind!r}")
