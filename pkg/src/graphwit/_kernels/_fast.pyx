# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: Walsh-Hadamard transform, PT sweeps, simplex pivots."""

import numpy as np


cdef void _wht(double* v, Py_ssize_t n) nogil:
    cdef Py_ssize_t h = 1, s, i
    cdef double a, b
    while h < n:
        s = 0
        while s < n:
            for i in range(s, s + h):
                a = v[i]
                b = v[i + h]
                v[i] = a + b
                v[i + h] = a - b
            s += 2 * h
        h *= 2


def wht_inplace(double[::1] v not None):
    """Unnormalized fast Walsh-Hadamard transform, in place.  len(v) = 2^k."""
    with nogil:
        _wht(&v[0], v.shape[0])
    return np.asarray(v)


def pt_sweep_min(double[::1] c not None,
                 const unsigned char[:, ::1] ybits not None,
                 const long long[::1] masks not None,
                 double[::1] out not None):
    """Minimum PT diagonal entry per bipartition mask (see fallback docstring)."""
    cdef Py_ssize_t N = c.shape[0]
    cdef Py_ssize_t n = ybits.shape[0]
    cdef Py_ssize_t K = masks.shape[0]
    cdef Py_ssize_t k, q, x
    cdef long long m
    cdef unsigned char fx
    cdef double mn
    scratch_np = np.empty(N, dtype=np.float64)
    f_np = np.empty(N, dtype=np.uint8)
    cdef double[::1] scratch = scratch_np
    cdef unsigned char[::1] f = f_np
    with nogil:
        for k in range(K):
            m = masks[k]
            for x in range(N):
                f[x] = 0
            for q in range(n):
                if (m >> q) & 1:
                    for x in range(N):
                        f[x] ^= ybits[q, x]
            for x in range(N):
                scratch[x] = -c[x] if f[x] else c[x]
            _wht(&scratch[0], N)
            mn = scratch[0]
            for x in range(1, N):
                if scratch[x] < mn:
                    mn = scratch[x]
            out[k] = mn
    return np.asarray(out)


def pivot_update(double[:, ::1] T not None, Py_ssize_t r, Py_ssize_t j):
    """One simplex pivot on tableau T at (row r, column j); returns the pivot row."""
    cdef Py_ssize_t m = T.shape[0]
    cdef Py_ssize_t nc = T.shape[1]
    cdef Py_ssize_t i, k
    cdef double piv, ci
    with nogil:
        piv = T[r, j]
        for k in range(nc):
            T[r, k] /= piv
        for i in range(m):
            if i == r:
                continue
            ci = T[i, j]
            if ci != 0.0:
                for k in range(nc):
                    T[i, k] -= ci * T[r, k]
    return np.asarray(T[r])
