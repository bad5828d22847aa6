# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same API as ``dickebec._kernels_py``."""

import numpy as np

from libc.math cimport exp, log, pow, NAN

BACKEND = "cython"


cdef double _series(double s, double z, double tol, long max_terms) nogil:
    cdef double total = 0.0, zk = 1.0, nxt, ratio
    cdef long k
    if z == 0.0:
        return 0.0
    for k in range(1, max_terms + 1):
        zk *= z
        total += zk * pow(<double>k, -s)
        nxt = zk * z * pow(<double>(k + 1), -s)
        if s >= 0.0:
            ratio = z
        else:
            ratio = z * pow((k + 2.0) / (k + 1.0), -s)
        if ratio < 1.0 and nxt <= tol * total * (1.0 - ratio):
            return total
    return NAN


cdef double _expansion(double t, double s, const double[::1] coeffs,
                       double sing_amp, double sing_pow, double sing_h,
                       int has_log) nogil:
    cdef double acc = 0.0
    cdef Py_ssize_t i
    for i in range(coeffs.shape[0] - 1, -1, -1):
        acc = acc * t + coeffs[i]
    if has_log:
        return acc + sing_amp * pow(t, sing_pow) * (sing_h - log(t))
    return acc + sing_amp * pow(t, sing_pow)


cdef inline double _li(double t, double tol, double t_switch, double s,
                       const double[::1] coeffs, double sing_amp,
                       double sing_pow, double sing_h, int has_log) nogil:
    if t >= t_switch:
        return _series(s, exp(-t), tol, 100000)
    return _expansion(t, s, coeffs, sing_amp, sing_pow, sing_h, has_log)


def polylog_series(double s, double z, double tol, long max_terms):
    return _series(s, z, tol, max_terms)


def polylog_expansion(double t, double s, const double[::1] coeffs,
                      double sing_amp, double sing_pow, double sing_h,
                      bint has_log):
    return _expansion(t, s, coeffs, sing_amp, sing_pow, sing_h, has_log)


def li_neg_log(double t, double tol, double t_switch, double s,
               const double[::1] coeffs, double sing_amp, double sing_pow,
               double sing_h, bint has_log):
    return _li(t, tol, t_switch, s, coeffs, sing_amp, sing_pow, sing_h, has_log)


def bisect_affine_li(double amp, double beta, double slope, double target,
                     double lo, double hi, bint lo_positive, int max_iter,
                     double tol, double t_switch, double s,
                     const double[::1] coeffs, double sing_amp,
                     double sing_pow, double sing_h, bint has_log):
    cdef double mid, f
    cdef int i
    with nogil:
        for i in range(max_iter):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            f = amp * _li(beta * mid, tol, t_switch, s, coeffs, sing_amp,
                          sing_pow, sing_h, has_log) + slope * mid - target
            if f == 0.0:
                lo = mid
                hi = mid
                break
            if (f > 0.0) == lo_positive:
                lo = mid
            else:
                hi = mid
    return 0.5 * (lo + hi)


def prepare_coeffs(coeffs):
    return np.ascontiguousarray(coeffs, dtype=np.float64)
