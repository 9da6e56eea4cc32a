"""Independent spectral oracle for small symmetric matrices.

Characteristic-polynomial coefficients come from the Faddeev-LeVerrier
trace recurrence carried in compensated double-double arithmetic (the
coefficients of det(lambda*I - A) overflow double precision's mantissa long
before N = 12).  Roots are isolated by derivative recursion: the critical
points of each polynomial in the chain split the Gershgorin interval into
strictly monotonic pieces, every sign change is bisected, and a critical
point whose value vanishes relative to the local coefficient scale is a
multiple root (one extra order per derivative level).  Symmetry guarantees
real-rootedness, so recovered multiplicities must sum to the degree at
every level; anything else raises RootIsolationFailure.

Shares no code path with the QL eigensolver.
"""

from __future__ import annotations

import numpy as np

from . import _ddouble as dd
from .errors import RootIsolationFailure, TooLarge

SIZE_CAP = 12
_BISECT_TOL = 5e-14
_ROOT_REL = 1e-24


def _as_matrix(op) -> np.ndarray:
    a = np.array(getattr(op, "matrix", op), dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    return a


def _dd_trace(mh, ml):
    th, tl = 0.0, 0.0
    for i in range(mh.shape[0]):
        th, tl = dd.dd_add(th, tl, float(mh[i, i]), float(ml[i, i]))
    return float(th), float(tl)


def _dd_matmul(a, mh, ml):
    # double matrix times double-double matrix, accumulated in double-double
    n = a.shape[0]
    rh = np.zeros((n, n))
    rl = np.zeros((n, n))
    for k in range(n):
        col = a[:, k : k + 1]
        ph, pl = dd.two_prod(col, mh[k : k + 1, :])
        ph, pl = dd.fast_two_sum(ph, pl + col * ml[k : k + 1, :])
        rh, rl = dd.dd_add(rh, rl, ph, pl)
    return rh, rl


def fl_coefficients(a):
    """Coefficients of the monic charpoly det(lambda*I - A), ascending by
    power, as a pair of (hi, lo) arrays of length N+1."""
    n = a.shape[0]
    ch = np.zeros(n + 1)
    cl = np.zeros(n + 1)
    ch[n] = 1.0
    mh = np.array(a, dtype=float)
    ml = np.zeros_like(mh)
    th, tl = _dd_trace(mh, ml)
    ch[n - 1], cl[n - 1] = -th, -tl
    diag = np.arange(n)
    for k in range(2, n + 1):
        dh, dl = dd.dd_add(
            mh[diag, diag], ml[diag, diag], float(ch[n - k + 1]), float(cl[n - k + 1])
        )
        mh[diag, diag] = dh
        ml[diag, diag] = dl
        mh, ml = _dd_matmul(a, mh, ml)
        th, tl = _dd_trace(mh, ml)
        h, l = dd.dd_div_d(th, tl, float(k))
        ch[n - k], cl[n - k] = -h, -l
    return ch, cl


def polyval(ch, cl, x):
    """Horner evaluation at double x (scalar or array), in double-double."""
    x = np.asarray(x, dtype=float)
    rh = np.full(x.shape, float(ch[-1]))
    rl = np.full(x.shape, float(cl[-1]))
    for k in range(len(ch) - 2, -1, -1):
        rh, rl = dd.dd_mul_d(rh, rl, x)
        rh, rl = dd.dd_add(rh, rl, float(ch[k]), float(cl[k]))
    return rh, rl


def _derivative(ch, cl):
    deg = len(ch) - 1
    dh = np.zeros(deg)
    dl = np.zeros(deg)
    for k in range(1, deg + 1):
        h, l = dd.dd_mul_d(float(ch[k]), float(cl[k]), float(k))
        dh[k - 1] = h
        dl[k - 1] = l
    return dh, dl


def _abs_scale(ch, x):
    # sum_k |c_k| |x|^k, an upper envelope for |p| near x
    s = abs(float(ch[-1]))
    ax = abs(x)
    for k in range(len(ch) - 2, -1, -1):
        s = s * ax + abs(float(ch[k]))
    return s


def _bisect_roots(ch, cl, a, b, sa):
    a = np.asarray(a, dtype=float).copy()
    b = np.asarray(b, dtype=float).copy()
    sa = np.asarray(sa, dtype=float)
    for _ in range(120):
        if np.all(b - a <= _BISECT_TOL):
            break
        mid = 0.5 * (a + b)
        vh, vl = polyval(ch, cl, mid)
        sm = dd.dd_sign(vh, vl)
        same = sm * sa > 0.0
        a = np.where(same, mid, a)
        b = np.where(same, b, mid)
        hit = sm == 0.0
        a = np.where(hit, mid, a)
        b = np.where(hit, mid, b)
    return 0.5 * (a + b)


def _real_roots(ch, cl, lo, hi):
    """Roots of a real-rooted polynomial in [lo, hi] as ascending
    (root, multiplicity) pairs.  Raises RootIsolationFailure when the
    multiplicities do not sum to the degree."""
    deg = len(ch) - 1
    if deg == 1:
        rh, _ = dd.dd_div(-float(ch[0]), -float(cl[0]), float(ch[1]), float(cl[1]))
        return [(float(rh), 1)]
    dch, dcl = _derivative(ch, cl)
    crit = _real_roots(dch, dcl, lo, hi)
    pts = [lo] + [c for c, _ in crit] + [hi]
    vh, vl = polyval(ch, cl, np.array(pts))
    signs = dd.dd_sign(vh, vl)
    mags = np.abs(vh + vl)
    roots = []
    is_root_pt = [False] * len(pts)
    for i, (c, m) in enumerate(crit):
        if mags[i + 1] <= _ROOT_REL * _abs_scale(ch, c) + 1e-280:
            roots.append((c, m + 1))
            is_root_pt[i + 1] = True
    ia, ib, isa = [], [], []
    for i in range(len(pts) - 1):
        # between consecutive critical points the polynomial is strictly
        # monotonic, so a sign change isolates exactly one simple root; an
        # interval ending at a known root holds no further ones
        if is_root_pt[i] or is_root_pt[i + 1] or pts[i + 1] <= pts[i]:
            continue
        if signs[i] * signs[i + 1] < 0.0:
            ia.append(pts[i])
            ib.append(pts[i + 1])
            isa.append(float(signs[i]))
    if ia:
        for r in _bisect_roots(ch, cl, ia, ib, isa):
            roots.append((float(r), 1))
    roots.sort(key=lambda rm: rm[0])
    total = sum(m for _, m in roots)
    if total != deg:
        raise RootIsolationFailure(
            f"isolated {total} of {deg} roots (with multiplicity) in a degree-{deg} factor"
        )
    return roots


def charpoly_oracle(op):
    """Ascending real roots (repeated per multiplicity) of det(lambda*I - A).

    Accepts a SchrodingerOperator or a raw symmetric matrix.  Raises TooLarge
    for N > 12; propagates RootIsolationFailure rather than guessing.
    """
    a = _as_matrix(op)
    n = a.shape[0]
    if n > SIZE_CAP:
        raise TooLarge(f"oracle is capped at N = {SIZE_CAP}, got N = {n}")
    ch, cl = fl_coefficients(a)
    radii = np.sum(np.abs(a), axis=1) - np.abs(np.diag(a))
    lo = float(np.min(np.diag(a) - radii)) - 1.0
    hi = float(np.max(np.diag(a) + radii)) + 1.0
    out = []
    for r, m in _real_roots(ch, cl, lo, hi):
        out.extend([r] * m)
    return np.array(out)
