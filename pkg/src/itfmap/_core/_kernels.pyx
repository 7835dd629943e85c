# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: sliding-dot-product correlation and the scalar
local-level Kalman recursion.  Contracts match `_kernels_py`."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def correlate_full(x, y):
    """Time-domain cross-correlation over all lags (see _kernels_py)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xa = np.ascontiguousarray(x, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ya = np.ascontiguousarray(y, dtype=np.float64)
    if xa.shape[0] != ya.shape[0]:
        raise ValueError("correlate_full expects two equal-length 1-D arrays")
    cdef Py_ssize_t n = xa.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(2 * n - 1, dtype=np.float64)
    cdef Py_ssize_t i, k, lo, hi, m
    cdef double acc
    cdef double* xp = <double*> xa.data
    cdef double* yp = <double*> ya.data
    for i in range(2 * n - 1):
        k = i - (n - 1)            # lag: c[i] = sum_m x[m] * y[m + k]
        lo = 0 if k >= 0 else -k
        hi = n - k if k >= 0 else n
        acc = 0.0
        for m in range(lo, hi):
            acc += xp[m] * yp[m + k]
        out[i] = acc
    return out


def kalman_local_level(z, double q, double r):
    """Scalar local-level Kalman filter, diffuse start (see _kernels_py)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] za = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t n = za.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    if n == 0:
        return out
    cdef double x = za[0]
    cdef double p = r
    cdef double pp, gain
    cdef Py_ssize_t k
    out[0] = x
    for k in range(1, n):
        pp = p + q
        gain = pp / (pp + r)
        x = x + gain * (za[k] - x)
        p = (1.0 - gain) * pp
        out[k] = x
    return out
