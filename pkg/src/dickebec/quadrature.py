"""Adaptive-quadrature evaluation of the free-gas integrals.

These evaluators integrate the momentum-space definitions directly, after
reducing the angular part, and never touch the polylogarithm code. They are
slow and exist to cross-check :class:`~dickebec.special_functions.ThermalCloud`.
"""

import math

from scipy import integrate

__all__ = [
    "radial_integral",
    "rho0_quad",
    "p0_quad",
    "rho0_prime_quad",
    "entropy_quad",
]


def _shell_factor(nu):
    # surface of the unit sphere in R^nu over (2 pi)^nu
    return 2.0 * math.pi ** (0.5 * nu) / math.gamma(0.5 * nu) / (2.0 * math.pi) ** nu


def radial_integral(f, cloud, gap, epsrel=1e-13):
    """``int d^nu k / (2 pi)^nu f(y)`` with ``y = beta (k^2/2m + gap)``.

    The range is split where the integrand changes character: at the
    scale set by the gap, at the thermal momentum and far in the tail.
    """
    beta, m, nu = cloud.beta, cloud.mass, cloud.nu

    def integrand(k):
        return k ** (nu - 1) * f(beta * (0.5 * k * k / m + gap))

    k_thermal = math.sqrt(2.0 * m / beta)
    cuts = sorted({math.sqrt(2.0 * m * gap) if gap > 0 else 0.0,
                   k_thermal, 8.0 * k_thermal})
    edges = [0.0] + [c for c in cuts if c > 0.0]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(integrand, a, b, epsabs=0.0, epsrel=epsrel, limit=400)
        total += val
    val, _ = integrate.quad(integrand, edges[-1], math.inf, epsabs=0.0,
                            epsrel=epsrel, limit=400)
    return _shell_factor(nu) * (total + val)


def _occupation(y):
    return math.exp(-y) / -math.expm1(-y)


def _log_term(y):
    return -math.log1p(-math.exp(-y))


def _occupation_slope(y):
    # -d/dy of 1/(e^y - 1)
    return math.exp(-y) / math.expm1(-y) ** 2


def _entropy_integrand(y):
    a = _occupation(y)
    if a == 0.0:
        return 0.0
    # (1 + a) ln(1 + a) - a ln a, rearranged to stay finite for large and small a
    return math.log1p(a) + a * math.log1p(1.0 / a)


def rho0_quad(cloud, mu):
    return radial_integral(_occupation, cloud, -mu)


def p0_quad(cloud, mu):
    return radial_integral(_log_term, cloud, -mu) / cloud.beta


def rho0_prime_quad(cloud, mu):
    return cloud.beta * radial_integral(_occupation_slope, cloud, -mu)


def entropy_quad(cloud, x):
    """Entropy density of the two thermal clouds at gap ``x`` by direct quadrature."""
    return 2.0 * radial_integral(_entropy_integrand, cloud, x)
