"""Pure-Python kernels. Reference implementation and fallback for ``_kernels``.

Every function here has a twin with an identical signature in the compiled
``_kernels`` extension; the two are checked against each other in the tests.

The Bose functions are always evaluated in the form ``Li_s(exp(-t))`` with
``t >= 0``.  For ``t >= t_switch`` the defining power series is summed with a
rigorous tail bound; closer to the singular point ``t = 0`` the series needs
O(1/t) terms, so the expansion in powers of ``t`` is used instead:

    Li_s(e^-t) = sing(t) + sum_k c_k t^k

where ``c_k = zeta(s - k) (-1)^k / k!`` and ``sing`` is ``Gamma(1-s) t^(s-1)``
(or the logarithmic term for positive integer ``s``).  The coefficients are
prepared once per order by :mod:`dickebec.special_functions`.
"""

import math

BACKEND = "python"


def polylog_series(s, z, tol, max_terms):
    """Sum ``z**k / k**s`` for k >= 1 until the tail bound drops below ``tol``.

    Returns NaN if ``max_terms`` is exhausted before the bound is met.
    """
    if z == 0.0:
        return 0.0
    total = 0.0
    zk = 1.0
    for k in range(1, max_terms + 1):
        zk *= z
        total += zk * k ** (-s)
        nxt = zk * z * (k + 1) ** (-s)
        if s >= 0.0:
            ratio = z
        else:
            # terms grow like k**|s|; the ratio bound shrinks with k
            ratio = z * ((k + 2.0) / (k + 1.0)) ** (-s)
        if ratio < 1.0 and nxt <= tol * total * (1.0 - ratio):
            return total
    return math.nan


def polylog_expansion(t, s, coeffs, sing_amp, sing_pow, sing_h, has_log):
    """Near-unity expansion of ``Li_s(exp(-t))`` for small ``t > 0``."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    if has_log:
        sing = sing_amp * t ** sing_pow * (sing_h - math.log(t))
    else:
        sing = sing_amp * t ** sing_pow
    return acc + sing


def li_neg_log(t, tol, t_switch, s, coeffs, sing_amp, sing_pow, sing_h, has_log):
    """``Li_s(exp(-t))`` for ``t > 0``, switching method at ``t_switch``."""
    if t >= t_switch:
        return polylog_series(s, math.exp(-t), tol, 100000)
    return polylog_expansion(t, s, coeffs, sing_amp, sing_pow, sing_h, has_log)


def bisect_affine_li(amp, beta, slope, target, lo, hi, lo_positive, max_iter,
                     tol, t_switch, s, coeffs, sing_amp, sing_pow, sing_h,
                     has_log):
    """Root of ``amp * Li_s(exp(-beta x)) + slope * x - target`` in (lo, hi).

    The caller guarantees a sign change and states the sign at ``lo``.
    Bisection runs until the bracket cannot be split in double precision.
    """
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f = amp * li_neg_log(beta * mid, tol, t_switch, s, coeffs, sing_amp,
                             sing_pow, sing_h, has_log) + slope * mid - target
        if f == 0.0:
            return mid
        if (f > 0.0) == lo_positive:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def prepare_coeffs(coeffs):
    return tuple(float(c) for c in coeffs)
