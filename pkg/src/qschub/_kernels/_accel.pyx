# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels (see _fallback for semantics)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def gather_scale_scatter(cnp.int64_t[::1] out, cnp.int64_t[::1] vec,
                         long long c, cnp.int32_t[::1] src, cnp.int32_t[::1] dst):
    cdef Py_ssize_t t
    cdef Py_ssize_t m = src.shape[0]
    cdef cnp.int64_t cc = c
    for t in range(m):
        out[dst[t]] += cc * vec[src[t]]


def scatter_add(cnp.int64_t[::1] out, cnp.int32_t[::1] dst, cnp.int64_t[::1] vals):
    cdef Py_ssize_t t
    cdef Py_ssize_t m = dst.shape[0]
    for t in range(m):
        out[dst[t]] += vals[t]


def compose_signed(cnp.int8_t[:, ::1] windows, cnp.int8_t[::1] other):
    cdef Py_ssize_t n = windows.shape[0]
    cdef Py_ssize_t m = windows.shape[1]
    out_arr = np.empty((n, m), dtype=np.int8)
    cdef cnp.int8_t[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef int t
    for j in range(m):
        t = other[j]
        if t > 0:
            for i in range(n):
                out[i, j] = windows[i, t - 1]
        else:
            for i in range(n):
                out[i, j] = -windows[i, -t - 1]
    return out_arr
