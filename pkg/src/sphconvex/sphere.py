"""Primitive geometry on the unit sphere S^{d-1} embedded in R^d.

Points are plain ``numpy`` float arrays of unit norm. Functions accept anything
array-like and return fresh arrays; nothing here mutates its inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateDirectionError,
    DegenerateLuneError,
    DimensionMismatchError,
    GeometryError,
)

HALF_PI = 0.5 * math.pi
_UNIT_SLACK = 4.5e-16


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical knobs shared by every sampled or iterative routine."""

    tol_angle: float = 1e-9
    tol_sample: float = 1e-3
    boundary_samples: int = 2048
    seed: int = 0

    def __post_init__(self):
        if not (self.tol_angle > 0 and self.tol_sample > 0):
            raise ValueError("tolerances must be positive")
        if self.boundary_samples < 16:
            raise ValueError("boundary_samples must be at least 16")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    @property
    def tol_constancy(self) -> float:
        """Default threshold for constant width/diameter verdicts."""
        return 5.0 * self.tol_sample


DEFAULT_TOL = ToleranceConfig()


def as_points(points, dim: int | None = None) -> np.ndarray:
    """Coerce to a float array of shape ``(n, d)``."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected a list of vectors, got shape {arr.shape}")
    if dim is not None and arr.shape[1] != dim:
        raise DimensionMismatchError(f"expected dimension {dim}, got {arr.shape[1]}")
    return arr


def normalize(v) -> np.ndarray:
    """Scale ``v`` onto the unit sphere."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.shape[0] < 2:
        raise DimensionMismatchError("a sphere point needs at least 2 coordinates")
    n = np.linalg.norm(v)
    if not np.isfinite(n) or n <= 0.0:
        raise DegenerateDirectionError("degenerate direction")
    # leave unit vectors untouched so normalisation is idempotent
    return v.copy() if abs(n - 1.0) <= _UNIT_SLACK else v / n


def normalize_rows(vs) -> np.ndarray:
    vs = np.asarray(vs, dtype=float)
    n = np.linalg.norm(vs, axis=-1, keepdims=True)
    if np.any(n <= 0.0):
        raise DegenerateDirectionError("degenerate direction")
    return np.where(np.abs(n - 1.0) <= _UNIT_SLACK, vs, vs / n)


def _check_dims(p: np.ndarray, q: np.ndarray) -> None:
    if p.shape[-1] != q.shape[-1]:
        raise DimensionMismatchError(f"dimension mismatch: {p.shape[-1]} vs {q.shape[-1]}")


def clamped_arccos(x):
    return np.arccos(np.clip(x, -1.0, 1.0))


def distance(p, q) -> float:
    """Great-circle distance ``arccos(p . q)``, in ``[0, pi]``."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    _check_dims(p, q)
    return float(clamped_arccos(np.dot(p, q)))


def antipode(p) -> np.ndarray:
    return -np.asarray(p, dtype=float)


def geodesic(p, q, t: float, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Point at fraction ``t`` of the minor arc from ``p`` to ``q``."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    _check_dims(p, q)
    omega = distance(p, q)
    if omega <= tol.tol_angle or omega >= math.pi - tol.tol_angle:
        raise GeometryError("geodesic endpoints are equal or antipodal")
    s = math.sin(omega)
    out = (math.sin((1.0 - t) * omega) * p + math.sin(t * omega) * q) / s
    return out / np.linalg.norm(out)


def tangent_basis(c) -> np.ndarray:
    """Orthonormal basis of the tangent space at ``c``, shape ``(d-1, d)``.

    Deterministic: obtained from a QR factorisation seeded with ``c`` followed
    by the standard basis.
    """
    c = np.asarray(c, dtype=float)
    d = c.shape[0]
    m = np.column_stack([c, np.eye(d)])
    q, _ = np.linalg.qr(m)
    basis = q[:, 1:d].T
    # QR leaves the sign of each column arbitrary; fix it for reproducibility.
    signs = np.sign(basis[np.arange(d - 1), np.argmax(np.abs(basis), axis=1)])
    return basis * signs[:, None]


@dataclass(frozen=True, eq=False)
class Cap:
    """Closed spherical cap ``{q : center . q >= cos(radius)}``.

    ``radius == pi/2`` is a closed hemisphere; ``radius == 0`` is only produced as
    the polar of a hemisphere and stands for the single point ``center``.
    """

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", normalize(self.center))
        r = float(self.radius)
        if not (0.0 <= r <= HALF_PI + 1e-15):
            raise GeometryError(f"cap radius {r} outside [0, pi/2]; larger caps are not convex")
        object.__setattr__(self, "radius", min(r, HALF_PI))

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    @property
    def is_hemisphere(self) -> bool:
        return self.radius == HALF_PI

    def boundary(self, m: int, seed: int = 0) -> np.ndarray:
        """``m`` points on the boundary sphere of the cap."""
        if self.radius == 0.0:
            return self.center[None, :].copy()
        dirs = direction_grid(self.dim - 1, m, seed=seed)
        tangent = dirs @ tangent_basis(self.center)
        return math.cos(self.radius) * self.center + math.sin(self.radius) * tangent


def hemisphere(center) -> Cap:
    return Cap(center, HALF_PI)


def cap_contains(cap: Cap, q, tol: float = DEFAULT_TOL.tol_angle) -> bool:
    q = np.asarray(q, dtype=float)
    _check_dims(cap.center, q)
    return bool(np.dot(cap.center, q) >= math.cos(cap.radius) - tol)


def cap_polar(cap: Cap) -> Cap:
    """Polar of a cap is the concentric cap of complementary radius."""
    return Cap(cap.center, HALF_PI - cap.radius)


@dataclass(frozen=True, eq=False)
class Lune:
    """Intersection of the closed hemispheres centred at ``a`` and ``b``."""

    a: np.ndarray
    b: np.ndarray
    tol: float = field(default=DEFAULT_TOL.tol_angle, repr=False)

    def __post_init__(self):
        a = normalize(self.a)
        b = normalize(self.b)
        _check_dims(a, b)
        dist = float(clamped_arccos(np.dot(a, b)))
        if dist <= self.tol or dist >= math.pi - self.tol:
            raise DegenerateLuneError("lune hemispheres must be different and not opposite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


def lune_thickness(lune: Lune) -> float:
    return math.pi - distance(lune.a, lune.b)


# -- direction grids --------------------------------------------------------


def fibonacci_sphere(n: int) -> np.ndarray:
    """Deterministic near-uniform grid of ``n`` points on S^2."""
    if n < 1:
        raise ValueError("grid size must be positive")
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = math.pi * (3.0 - math.sqrt(5.0)) * np.arange(n)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def circle_grid(n: int, offset: float = 0.0) -> np.ndarray:
    phi = offset + 2.0 * math.pi * np.arange(n) / n
    return np.column_stack([np.cos(phi), np.sin(phi)])


def s3_grid(n: int) -> np.ndarray:
    """Product grid on S^3 from Hopf-style coordinates (eta, xi1, xi2)."""
    k = max(2, round((n / 2.0) ** (1.0 / 3.0)))
    pts = []
    for eta in (np.arange(k) + 0.5) * (HALF_PI / k):
        n1 = max(1, round(2 * k * math.cos(eta)))
        n2 = max(1, round(2 * k * math.sin(eta)))
        for a in 2 * math.pi * np.arange(n1) / n1:
            for b in 2 * math.pi * (np.arange(n2) + 0.5) / n2:
                pts.append(
                    (math.cos(eta) * math.cos(a), math.cos(eta) * math.sin(a),
                     math.sin(eta) * math.cos(b), math.sin(eta) * math.sin(b))
                )
    return np.asarray(pts)


def direction_grid(dim: int, n: int, seed: int = 0) -> np.ndarray:
    """Unit vectors in R^dim: deterministic grids for dim <= 4, seeded otherwise."""
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        return circle_grid(n)
    if dim == 3:
        return fibonacci_sphere(n)
    if dim == 4:
        return s3_grid(n)
    rng = np.random.default_rng(seed)
    return normalize_rows(rng.standard_normal((n, dim)))
