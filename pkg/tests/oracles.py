"""Slow, independent reference computations used to check the fast paths."""
import math

import numpy as np

from sphconvex.bodies import SphericalPolytope, interior_point, slack
from sphconvex.sphere import normalize_rows, tangent_basis


def exit_angle_bisection(a, k, c, u, iters=200):
    """First ``t`` where ``cos t c + sin t u`` violates a constraint, by scanning then bisecting."""
    def inside(t):
        x = math.cos(t) * c + math.sin(t) * u
        return np.all(a @ x - k >= 0.0)

    ts = np.linspace(0.0, math.pi, 4001)
    hi = next(t for t in ts[1:] if not inside(t))
    lo = hi - ts[1]
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if inside(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def body_points(body, n, seed=0):
    """Points filling the body: dense boundary rays from the interior point, and for
    polytopes also random spherical combinations of the vertices."""
    rng = np.random.default_rng(seed)
    c = interior_point(body)
    out = []
    if isinstance(body, SphericalPolytope):
        w = rng.dirichlet(np.full(len(body.vertices), 0.3), size=n)
        out.append(normalize_rows(w @ body.vertices))
        out.append(body.vertices)
        # edge-ish points between vertex pairs
        i, j = rng.integers(0, len(body.vertices), (2, n))
        t = rng.uniform(0, 1, (n, 1))
        out.append(normalize_rows((1 - t) * body.vertices[i] + t * body.vertices[j]))
    g = rng.standard_normal((n, body.dim))
    g -= np.outer(g @ c, c)
    dirs = normalize_rows(g)
    a, k = body.constraints

    def inside(t):
        x = np.cos(t)[:, None] * c + np.sin(t)[:, None] * dirs
        return np.all(x @ a.T - k >= 0.0, axis=1)

    # coarse scan for the first exit, then bisection on every ray at once
    lo = np.zeros(n)
    step = math.pi / 400
    while True:
        more = inside(lo + step) & (lo + step < math.pi)
        if not more.any():
            break
        lo = np.where(more, lo + step, lo)
    hi = lo + step
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        ok = inside(mid)
        lo, hi = np.where(ok, mid, lo), np.where(ok, hi, mid)
    out.append(np.cos(lo)[:, None] * c + np.sin(lo)[:, None] * dirs)
    pts = np.vstack(out)
    return pts[slack(body, pts) >= -1e-12]


def max_distance_sampled(body, p, n=20000, seed=0):
    pts = body_points(body, n, seed)
    return float(np.max(np.arccos(np.clip(pts @ p, -1, 1))))


def circumradius_bisection(tau, iters=200):
    """Circumradius R of the equilateral triangle of side ``tau``: vertices at polar
    angle R, 120 degrees apart; bisect on the side length."""
    def side(r):
        a = np.array([math.sin(r), 0.0, math.cos(r)])
        b = np.array([math.sin(r) * math.cos(2 * math.pi / 3), math.sin(r) * math.sin(2 * math.pi / 3),
                      math.cos(r)])
        return math.acos(np.clip(a @ b, -1, 1))

    lo, hi = 0.0, math.pi / 2
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if side(mid) < tau:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def tangent_dirs(c, n, seed=0):
    rng = np.random.default_rng(seed)
    return normalize_rows(rng.standard_normal((n, len(c) - 1))) @ tangent_basis(c)


def _circle_intersections(c1, k1, c2, k2):
    """Points x on S^2 with c1.x = k1 and c2.x = k2."""
    g = c1 @ c2
    det = 1.0 - g * g
    if det < 1e-14:
        return []
    alpha = (k1 - k2 * g) / det
    beta = (k2 - k1 * g) / det
    base = alpha * c1 + beta * c2
    rest = 1.0 - base @ base
    if rest < 0.0:
        return []
    n = np.cross(c1, c2)
    n /= np.linalg.norm(n)
    s = math.sqrt(rest)
    return [base + s * n, base - s * n]


def exact_farthest_s2(body, p):
    """Largest distance from ``p`` to a body on S^2 by enumerating critical points.

    On a body bounded by circles ``a_i . x = k_i`` the minimum of ``p . x`` is at
    ``-p`` (if inside), at the minimiser of ``p . x`` on one boundary circle, or
    where two boundary circles cross.
    """
    a, k = body.constraints
    cands = [-p]
    for ai, ki in zip(a, k):
        t = p - (p @ ai) * ai
        nt = np.linalg.norm(t)
        if nt > 1e-14:
            cands.append(ki * ai - math.sqrt(max(0.0, 1 - ki * ki)) * t / nt)
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            cands.extend(_circle_intersections(a[i], k[i], a[j], k[j]))
    cands = np.array(cands)
    cands = cands[slack(body, cands) >= -1e-9]
    return float(np.max(np.arccos(np.clip(cands @ p, -1, 1))))
