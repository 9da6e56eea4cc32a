"""Compensated (double-double) arithmetic on numpy arrays.

Each value is an unevaluated sum hi + lo with |lo| <= ulp(hi)/2, giving
roughly 32 significant digits.  All helpers broadcast elementwise over
numpy arrays or plain floats.  No overflow guards: intended operand range
is well inside 1e150, which the splitter never exceeds.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def fast_two_sum(a, b):
    # requires |a| >= |b| (or a == 0)
    s = a + b
    return s, b - (s - a)


def split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(xh, xl, yh, yl):
    sh, sl = two_sum(xh, yh)
    th, tl = two_sum(xl, yl)
    sh, sl = fast_two_sum(sh, sl + th)
    return fast_two_sum(sh, sl + tl)


def dd_add_d(xh, xl, d):
    sh, sl = two_sum(xh, d)
    return fast_two_sum(sh, sl + xl)


def dd_mul(xh, xl, yh, yl):
    ph, pl = two_prod(xh, yh)
    return fast_two_sum(ph, pl + (xh * yl + xl * yh))


def dd_mul_d(xh, xl, d):
    ph, pl = two_prod(xh, d)
    return fast_two_sum(ph, pl + xl * d)


def dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    th, tl = dd_mul_d(yh, yl, q1)
    rh, rl = dd_add(xh, xl, -th, -tl)
    q2 = (rh + rl) / yh
    return fast_two_sum(q1, q2)


def dd_div_d(xh, xl, d):
    q1 = xh / d
    th, tl = two_prod(q1, d)
    rh, rl = dd_add(xh, xl, -th, -tl)
    q2 = (rh + rl) / d
    return fast_two_sum(q1, q2)


def dd_sign(h, l):
    """Sign of hi + lo: the hi part decides unless it is exactly zero."""
    s = np.sign(h)
    return np.where(s == 0, np.sign(l), s)
