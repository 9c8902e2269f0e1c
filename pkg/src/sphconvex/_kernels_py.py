"""Pure numpy implementations of the hot kernels.

These are the reference versions; ``_ckernels.pyx`` mirrors every signature.
"""
import numpy as np

# Upper bound on the number of float64 entries materialised per chunk.
_CHUNK_ENTRIES = 1 << 22


def _chunks(n, m):
    step = max(1, _CHUNK_ENTRIES // max(m, 1))
    for start in range(0, n, step):
        yield slice(start, min(n, start + step))


def exit_angles(A, k, c, U):
    """First angle at which ``cos(t) c + sin(t) u`` leaves ``{x : A x >= k}``.

    ``c`` must satisfy every constraint strictly and each row ``u`` of ``U`` must be
    a unit vector orthogonal to ``c``. Returns ``inf`` where a direction never
    leaves the region.
    """
    A = np.ascontiguousarray(A, dtype=float)
    k = np.ascontiguousarray(k, dtype=float)
    U = np.ascontiguousarray(U, dtype=float)
    a = A @ c
    out = np.empty(U.shape[0])
    for sl in _chunks(U.shape[0], A.shape[0]):
        b = U[sl] @ A.T
        r = np.hypot(a, b)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = k / r
            t = np.arctan2(b, a) + np.arccos(np.clip(ratio, -1.0, 1.0))
        t[ratio <= -1.0] = np.inf
        out[sl] = t.min(axis=1)
    return out


def min_dot_rows(X, Y):
    """For each row of ``X`` the minimum dot product with a row of ``Y`` and its index."""
    X = np.ascontiguousarray(X, dtype=float)
    Y = np.ascontiguousarray(Y, dtype=float)
    vals = np.empty(X.shape[0])
    idx = np.empty(X.shape[0], dtype=np.intp)
    for sl in _chunks(X.shape[0], Y.shape[0]):
        g = X[sl] @ Y.T
        j = np.argmin(g, axis=1)
        idx[sl] = j
        vals[sl] = g[np.arange(g.shape[0]), j]
    return vals, idx


def _project_one(u, V):
    # Lawson-Hanson active set method for min |V^T x - u|, x >= 0. The passive
    # set never exceeds d columns, so every least-squares solve is tiny.
    d = V.shape[1]
    passive: list[int] = []
    x = np.zeros(0)
    excluded = np.zeros(V.shape[0], dtype=bool)
    r = u.copy()
    for _ in range(10 * d + 50):
        w = V @ r
        w[excluded] = -np.inf
        j = int(np.argmax(w))
        if w[j] <= 1e-13 or len(passive) >= d:
            break
        passive.append(j)
        excluded[j] = True
        x = np.append(x, 0.0)
        for _ in range(4 * d + 4):
            vp = V[passive]
            g = vp @ vp.T
            if np.linalg.cond(g) > 1e14:
                passive.pop()
                x = x[:-1]
                break
            z = np.linalg.solve(g, vp @ u)
            neg = z <= 0.0
            if not neg.any():
                x = z
                break
            alpha = np.min(x[neg] / (x[neg] - z[neg]))
            x = x + alpha * (z - x)
            keep = x > 1e-15
            for p in np.asarray(passive)[~keep]:
                excluded[p] = False
            passive = [p for p, kp in zip(passive, keep) if kp]
            x = x[keep]
        r = u - (V[passive].T @ x if passive else 0.0)
    return u - r


def cone_project(U, V):
    """Euclidean projection of each row of ``U`` onto the cone spanned by rows of ``V``."""
    U = np.ascontiguousarray(U, dtype=float)
    V = np.ascontiguousarray(V, dtype=float)
    out = np.zeros_like(U)
    if V.shape[0] == 0:
        return out
    for i in range(U.shape[0]):
        out[i] = _project_one(U[i], V)
    return out
