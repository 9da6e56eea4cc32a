"""Pure-Python dense symmetric eigensolver kernel.

Householder reduction to tridiagonal form followed by implicit-shift QL
iteration with Wilkinson shifts, in the classic EISPACK tred2/imtql2
organization.  This is the fallback used when the compiled kernel is not
built; both kernels implement the same recurrences.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = 2.220446049250313e-16


def _tridiagonalize(a, d, e):
    # On exit a holds the accumulated orthogonal transform Q with
    # Q^T A Q tridiagonal, d the diagonal, e[1:] the subdiagonal.
    n = a.shape[0]
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        if l > 0:
            scale = float(np.sum(np.abs(a[i, : l + 1])))
            if scale == 0.0:
                e[i] = a[i, l]
            else:
                a[i, : l + 1] /= scale
                h = float(np.dot(a[i, : l + 1], a[i, : l + 1]))
                f = a[i, l]
                g = -math.sqrt(h) if f >= 0.0 else math.sqrt(h)
                e[i] = scale * g
                h -= f * g
                a[i, l] = f - g
                f = 0.0
                for j in range(l + 1):
                    a[j, i] = a[i, j] / h
                    g = float(np.dot(a[j, : j + 1], a[i, : j + 1]))
                    g += float(np.dot(a[j + 1 : l + 1, j], a[i, j + 1 : l + 1]))
                    e[j] = g / h
                    f += e[j] * a[i, j]
                hh = f / (h + h)
                for j in range(l + 1):
                    f = a[i, j]
                    g = e[j] - hh * f
                    e[j] = g
                    a[j, : j + 1] -= f * e[: j + 1] + g * a[i, : j + 1]
        else:
            e[i] = a[i, l]
        d[i] = h
    d[0] = 0.0
    e[0] = 0.0
    for i in range(n):
        l = i
        if d[i] != 0.0:
            for j in range(l):
                g = float(np.dot(a[i, :l], a[:l, j]))
                a[:l, j] -= g * a[:l, i]
        d[i] = a[i, i]
        a[i, i] = 1.0
        if l > 0:
            a[i, :l] = 0.0
            a[:l, i] = 0.0


def _ql_implicit(d, e, z, max_sweeps):
    # Implicit QL with Wilkinson shift on the tridiagonal (d, e); plane
    # rotations are accumulated into the columns of z.  Returns -1 on
    # success or the index of the eigenvalue that failed to converge.
    n = d.shape[0]
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    for l in range(n):
        sweeps = 0
        while True:
            m = n - 1
            for mm in range(l, n - 1):
                dd = abs(d[mm]) + abs(d[mm + 1])
                if abs(e[mm]) <= _EPS * dd:
                    m = mm
                    break
            if m == l:
                break
            if sweeps == max_sweeps:
                return l
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * col
                z[:, i] = c * z[:, i] - s * col
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
    a = np.array(a, dtype=float, order="C")
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 1:
        return a[0, :1].copy(), np.ones((1, 1)), -1
    d = np.zeros(n)
    e = np.zeros(n)
    _tridiagonalize(a, d, e)
    fail = _ql_implicit(d, e, a, max_sweeps)
    return d, a, fail
