# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled dense symmetric eigensolver kernel.

Same Householder + implicit-shift QL recurrences as _eigen_py, written as
scalar loops for the C compiler.  Selected automatically at import when the
extension is built.
"""

import numpy as np

from libc.math cimport fabs, sqrt, hypot, copysign

cdef double _EPS = 2.220446049250313e-16


cdef void _tridiagonalize(double[:, ::1] a, double[::1] d, double[::1] e) noexcept:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k, l
    cdef double scale, h, hh, f, g
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        if l > 0:
            scale = 0.0
            for k in range(l + 1):
                scale += fabs(a[i, k])
            if scale == 0.0:
                e[i] = a[i, l]
            else:
                for k in range(l + 1):
                    a[i, k] /= scale
                    h += a[i, k] * a[i, k]
                f = a[i, l]
                g = -sqrt(h) if f >= 0.0 else sqrt(h)
                e[i] = scale * g
                h -= f * g
                a[i, l] = f - g
                f = 0.0
                for j in range(l + 1):
                    a[j, i] = a[i, j] / h
                    g = 0.0
                    for k in range(j + 1):
                        g += a[j, k] * a[i, k]
                    for k in range(j + 1, l + 1):
                        g += a[k, j] * a[i, k]
                    e[j] = g / h
                    f += e[j] * a[i, j]
                hh = f / (h + h)
                for j in range(l + 1):
                    f = a[i, j]
                    g = e[j] - hh * f
                    e[j] = g
                    for k in range(j + 1):
                        a[j, k] -= f * e[k] + g * a[i, k]
        else:
            e[i] = a[i, l]
        d[i] = h
    d[0] = 0.0
    e[0] = 0.0
    for i in range(n):
        l = i
        if d[i] != 0.0:
            for j in range(l):
                g = 0.0
                for k in range(l):
                    g += a[i, k] * a[k, j]
                for k in range(l):
                    a[k, j] -= g * a[k, i]
        d[i] = a[i, i]
        a[i, i] = 1.0
        for j in range(l):
            a[j, i] = 0.0
            a[i, j] = 0.0


cdef Py_ssize_t _ql_implicit(double[::1] d, double[::1] e, double[:, ::1] z,
                             int max_sweeps) noexcept:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i, k, l, m, mm
    cdef int sweeps, underflow
    cdef double dd, g, r, s, c, p, f, b, col
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    for l in range(n):
        sweeps = 0
        while True:
            m = n - 1
            for mm in range(l, n - 1):
                dd = fabs(d[mm]) + fabs(d[mm + 1])
                if fabs(e[mm]) <= _EPS * dd:
                    m = mm
                    break
            if m == l:
                break
            if sweeps == max_sweeps:
                return l
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = 0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = 1
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(n):
                    col = z[k, i + 1]
                    z[k, i + 1] = s * z[k, i] + c * col
                    z[k, i] = c * z[k, i] - s * col
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


def symmetric_eigh(a, max_sweeps=50):
    """Full eigendecomposition of a symmetric matrix.

    Returns (d, z, fail): unsorted eigenvalues, eigenvector columns, and
    fail = -1 on success or the index that exceeded max_sweeps.
    """
    cdef Py_ssize_t fail
    a = np.array(a, dtype=np.float64, order="C")
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 1:
        return a[0, :1].copy(), np.ones((1, 1)), -1
    d = np.zeros(n)
    e = np.zeros(n)
    _tridiagonalize(a, d, e)
    fail = _ql_implicit(d, e, a, int(max_sweeps))
    return d, a, fail
