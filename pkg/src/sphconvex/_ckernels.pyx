# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the kernels in ``_kernels_py``; same signatures and results."""
import numpy as np
cimport numpy as cnp
from libc.math cimport atan2, acos, sqrt, INFINITY, fabs

cnp.import_array()

cdef enum:
    MAXD = 16


def exit_angles(A, k, c, U):
    cdef double[:, ::1] a_mat = np.ascontiguousarray(A, dtype=np.float64)
    cdef double[::1] kk = np.ascontiguousarray(k, dtype=np.float64)
    cdef double[::1] cc = np.ascontiguousarray(c, dtype=np.float64)
    cdef double[:, ::1] uu = np.ascontiguousarray(U, dtype=np.float64)
    cdef Py_ssize_t n = uu.shape[0], m = a_mat.shape[0], d = a_mat.shape[1]
    cdef double[::1] ac = np.empty(m)
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j, l
    cdef double s, b, r, ratio, t, best
    for i in range(m):
        s = 0.0
        for l in range(d):
            s += a_mat[i, l] * cc[l]
        ac[i] = s
    for j in range(n):
        best = INFINITY
        for i in range(m):
            b = 0.0
            for l in range(d):
                b += uu[j, l] * a_mat[i, l]
            r = sqrt(ac[i] * ac[i] + b * b)
            if r == 0.0:
                continue
            ratio = kk[i] / r
            if ratio <= -1.0:
                continue
            if ratio > 1.0:
                ratio = 1.0
            t = atan2(b, ac[i]) + acos(ratio)
            if t < best:
                best = t
        out[j] = best
    return out_arr


def min_dot_rows(X, Y):
    cdef double[:, ::1] xx = np.ascontiguousarray(X, dtype=np.float64)
    cdef double[:, ::1] yy = np.ascontiguousarray(Y, dtype=np.float64)
    cdef Py_ssize_t n = xx.shape[0], m = yy.shape[0], d = xx.shape[1]
    vals_arr = np.empty(n)
    idx_arr = np.empty(n, dtype=np.intp)
    cdef double[::1] vals = vals_arr
    cdef Py_ssize_t[::1] idx = idx_arr
    cdef Py_ssize_t i, j, l, bj
    cdef double s, best
    for i in range(n):
        best = INFINITY
        bj = 0
        for j in range(m):
            s = 0.0
            for l in range(d):
                s += xx[i, l] * yy[j, l]
            if s < best:
                best = s
                bj = j
        vals[i] = best
        idx[i] = bj
    return vals_arr, idx_arr


cdef int _solve(double* g, double* rhs, double* z, int n) nogil:
    # Gaussian elimination with partial pivoting on an n x n row-major system.
    cdef int i, j, l, piv
    cdef double mx, f, tmp
    for i in range(n):
        piv = i
        mx = fabs(g[i * n + i])
        for j in range(i + 1, n):
            if fabs(g[j * n + i]) > mx:
                mx = fabs(g[j * n + i])
                piv = j
        if mx < 1e-14:
            return -1
        if piv != i:
            for l in range(n):
                tmp = g[i * n + l]
                g[i * n + l] = g[piv * n + l]
                g[piv * n + l] = tmp
            tmp = rhs[i]
            rhs[i] = rhs[piv]
            rhs[piv] = tmp
        for j in range(i + 1, n):
            f = g[j * n + i] / g[i * n + i]
            for l in range(i, n):
                g[j * n + l] -= f * g[i * n + l]
            rhs[j] -= f * rhs[i]
    for i in range(n - 1, -1, -1):
        tmp = rhs[i]
        for l in range(i + 1, n):
            tmp -= g[i * n + l] * z[l]
        z[i] = tmp / g[i * n + i]
    return 0


cdef void _project_one(double[:, ::1] vv, double* u, double* y, signed char* excluded, int d) nogil:
    # Lawson-Hanson active set method for min |V^T x - u|, x >= 0.
    cdef Py_ssize_t m = vv.shape[0]
    cdef int passive[MAXD]
    cdef double x[MAXD]
    cdef double z[MAXD]
    cdef double g[MAXD * MAXD]
    cdef double rhs[MAXD]
    cdef double r[MAXD]
    cdef int np_ = 0, it, inner, p, q, l, cnt
    cdef Py_ssize_t j, bj
    cdef double w, bw, alpha, a, s
    for j in range(m):
        excluded[j] = 0
    for l in range(d):
        r[l] = u[l]
    for it in range(10 * d + 50):
        bw = 1e-13
        bj = -1
        for j in range(m):
            if excluded[j]:
                continue
            w = 0.0
            for l in range(d):
                w += vv[j, l] * r[l]
            if w > bw:
                bw = w
                bj = j
        if bj < 0 or np_ >= d:
            break
        passive[np_] = <int>bj
        x[np_] = 0.0
        np_ += 1
        excluded[bj] = 1
        for inner in range(4 * d + 4):
            for p in range(np_):
                s = 0.0
                for l in range(d):
                    s += vv[passive[p], l] * u[l]
                rhs[p] = s
                for q in range(np_):
                    s = 0.0
                    for l in range(d):
                        s += vv[passive[p], l] * vv[passive[q], l]
                    g[p * np_ + q] = s
            if _solve(g, rhs, z, np_) != 0:
                # dependent column: drop the newest and keep it excluded
                np_ -= 1
                break
            alpha = 2.0
            for p in range(np_):
                if z[p] <= 0.0:
                    a = x[p] / (x[p] - z[p])
                    if a < alpha:
                        alpha = a
            if alpha >= 2.0:
                for p in range(np_):
                    x[p] = z[p]
                break
            for p in range(np_):
                x[p] += alpha * (z[p] - x[p])
            cnt = 0
            for p in range(np_):
                if x[p] > 1e-15:
                    passive[cnt] = passive[p]
                    x[cnt] = x[p]
                    cnt += 1
                else:
                    excluded[passive[p]] = 0
            np_ = cnt
        for l in range(d):
            s = u[l]
            for p in range(np_):
                s -= x[p] * vv[passive[p], l]
            r[l] = s
    for l in range(d):
        y[l] = u[l] - r[l]


def cone_project(U, V):
    cdef double[:, ::1] uu = np.ascontiguousarray(U, dtype=np.float64)
    cdef double[:, ::1] vv = np.ascontiguousarray(V, dtype=np.float64)
    cdef Py_ssize_t n = uu.shape[0], d = uu.shape[1], m = vv.shape[0]
    if d > MAXD:
        raise ValueError("cone_project supports at most 16 dimensions")
    out_arr = np.zeros((n, d))
    if n == 0 or m == 0:
        return out_arr
    cdef double[:, ::1] out = out_arr
    excl_arr = np.zeros(m, dtype=np.int8)
    cdef signed char[::1] excl = excl_arr
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            _project_one(vv, &uu[i, 0], &out[i, 0], &excl[0], <int>d)
    return out_arr
