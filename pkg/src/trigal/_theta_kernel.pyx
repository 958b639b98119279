# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice sums for theta functions with characteristics.

Same contract as the numpy version in ``_theta_py``.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin, M_PI

cnp.import_array()


def theta_sums(long[:, ::1] offsets, long[:, ::1] centers, double[::1] a,
               double complex[:, ::1] tau, double complex[:, ::1] zb, int order):
    cdef Py_ssize_t P = offsets.shape[0]
    cdef Py_ssize_t g = offsets.shape[1]
    cdef Py_ssize_t K = centers.shape[0]
    cdef Py_ssize_t k, p, i, j
    cdef double[:, ::1] v = np.empty((P, g))
    cdef double[::1] ere = np.empty(P)
    cdef double[::1] eim = np.empty(P)
    cdef double complex[::1] val = np.zeros(K, dtype=np.complex128)
    cdef double complex[:, ::1] grad = np.zeros((K, g), dtype=np.complex128)
    cdef double complex[:, :, ::1] hess = np.zeros((K, g, g), dtype=np.complex128)
    cdef double[::1] logscale = np.empty(K)
    cdef double complex q, lin, t, s, tv
    cdef double mx, w
    for k in range(K):
        mx = -1e308
        for p in range(P):
            for i in range(g):
                v[p, i] = centers[k, i] + offsets[p, i] + a[i]
            q = 0
            lin = 0
            for i in range(g):
                s = 0
                for j in range(g):
                    s = s + tau[i, j] * v[p, j]
                q = q + v[p, i] * s
                lin = lin + v[p, i] * zb[k, i]
            # exponent = i pi q + 2 i pi lin
            ere[p] = -M_PI * q.imag - 2 * M_PI * lin.imag
            eim[p] = M_PI * q.real + 2 * M_PI * lin.real
            if ere[p] > mx:
                mx = ere[p]
        logscale[k] = mx
        for p in range(P):
            w = exp(ere[p] - mx)
            t = w * cos(eim[p]) + 1j * w * sin(eim[p])
            val[k] = val[k] + t
            if order >= 1:
                for i in range(g):
                    tv = t * v[p, i]
                    grad[k, i] = grad[k, i] + tv
                    if order >= 2:
                        # upper triangle only; mirrored below
                        for j in range(i, g):
                            hess[k, i, j] = hess[k, i, j] + tv * v[p, j]
        if order >= 2:
            for i in range(g):
                for j in range(i):
                    hess[k, i, j] = hess[k, j, i]
    g_out = h_out = None
    if order >= 1:
        g_out = np.asarray(grad) * (2j * np.pi)
    if order >= 2:
        h_out = np.asarray(hess) * (-4 * np.pi ** 2)
    return np.asarray(val), g_out, h_out, np.asarray(logscale)
