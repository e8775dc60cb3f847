# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scoring kernels; mirrors the pure-Python module `_kernels_py`."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, log, sin

cnp.import_array()

cdef double PI = 3.141592653589793


def fejer_log_scores(const double[:, :, ::1] w_cos, const double[:, :, ::1] w_sin,
                     const double[::1] log_counts, const double[::1] x, double floor):
    cdef Py_ssize_t n_classes = w_cos.shape[0]
    cdef Py_ssize_t dim = w_cos.shape[1]
    cdef Py_ssize_t order = w_cos.shape[2]  # J + 1
    cdef cnp.ndarray cos_buf = np.empty((dim, order), dtype=np.float64)
    cdef cnp.ndarray sin_buf = np.empty((dim, order), dtype=np.float64)
    cdef double[:, ::1] ct = cos_buf
    cdef double[:, ::1] st = sin_buf
    cdef cnp.ndarray out = np.empty(n_classes, dtype=np.float64)
    cdef double[::1] scores = out
    cdef Py_ssize_t c, d, j
    cdef double c1, s1, acc, total

    # Basis tables: two transcendental calls per dimension, the rest by
    # the angle-addition recursion. Shared across classes.
    for d in range(dim):
        c1 = cos(PI * x[d])
        s1 = sin(PI * x[d])
        ct[d, 0] = 0.5
        st[d, 0] = 0.0
        if order > 1:
            ct[d, 1] = c1
            st[d, 1] = s1
        for j in range(2, order):
            ct[d, j] = ct[d, j - 1] * c1 - st[d, j - 1] * s1
            st[d, j] = ct[d, j - 1] * s1 + st[d, j - 1] * c1

    for c in range(n_classes):
        total = log_counts[c]
        for d in range(dim):
            acc = w_cos[c, d, 0] * ct[d, 0]
            for j in range(1, order):
                acc = acc + w_cos[c, d, j] * ct[d, j] + w_sin[c, d, j - 1] * st[d, j]
            if acc < floor:
                acc = floor
            total = total + log(acc)
        scores[c] = total
    return out


def gaussian_log_scores(const double[:, ::1] train, const long[::1] starts,
                        const double[::1] x, double neg_inv_two_sigma_sq):
    cdef Py_ssize_t n = train.shape[0]
    cdef Py_ssize_t dim = train.shape[1]
    cdef Py_ssize_t n_classes = starts.shape[0] - 1
    cdef cnp.ndarray z_buf = np.empty(n, dtype=np.float64)
    cdef double[::1] z = z_buf
    cdef cnp.ndarray out = np.empty(n_classes, dtype=np.float64)
    cdef double[::1] scores = out
    cdef Py_ssize_t r, d, c, lo, hi
    cdef double s, diff, m, acc

    for r in range(n):
        s = 0.0
        for d in range(dim):
            diff = train[r, d] - x[d]
            s += diff * diff
        z[r] = s * neg_inv_two_sigma_sq

    for c in range(n_classes):
        lo = starts[c]
        hi = starts[c + 1]
        m = z[lo]
        for r in range(lo + 1, hi):
            if z[r] > m:
                m = z[r]
        acc = 0.0
        for r in range(lo, hi):
            acc += exp(z[r] - m)
        scores[c] = m + log(acc)
    return out


def sq_dists(const double[:, ::1] train, const double[::1] x):
    cdef Py_ssize_t n = train.shape[0]
    cdef Py_ssize_t dim = train.shape[1]
    cdef cnp.ndarray out = np.empty(n, dtype=np.float64)
    cdef double[::1] d2 = out
    cdef Py_ssize_t r, d
    cdef double s, diff
    for r in range(n):
        s = 0.0
        for d in range(dim):
            diff = train[r, d] - x[d]
            s += diff * diff
        d2[r] = s
    return out
