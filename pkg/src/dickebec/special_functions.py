"""Free Bose gas thermodynamics in nu dimensions.

With the dispersion ``k**2 / 2m`` and natural units (hbar = k_B = 1) the
free-gas density, pressure and density derivative at chemical potential
``mu <= 0`` reduce to Bose functions of the fugacity ``z = exp(beta mu)``:

    rho0(mu)       = L**-nu           * Li_{nu/2}(z)
    p0(mu)         = L**-nu / beta    * Li_{nu/2 + 1}(z)
    rho0_prime(mu) = L**-nu * beta    * Li_{nu/2 - 1}(z)

where ``L**-nu = (m / (2 pi beta))**(nu/2)`` is the inverse thermal volume.
The adaptive-quadrature versions of the same integrals live in
:mod:`dickebec.quadrature` and are used only as test oracles.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from ._backend import kernels
from .errors import DivergenceError, DomainError

__all__ = [
    "ThermalCloud",
    "bose_polylog",
    "polylog_neg_log",
    "SERIES_SWITCH",
]

# below this value of t = -ln z the near-unity expansion replaces the series
SERIES_SWITCH = 0.5
EXPANSION_TERMS = 32
MAX_BISECT_ITER = 2000
# orders closer than this to a positive integer get the pole pair merged
NEAR_INTEGER = 1e-3
# Stieltjes constants: zeta(1 + d) = 1/d + sum_j (-1)^j gamma_j d^j / j!
_STIELTJES = (0.5772156649015329, -0.07281584548367673, -0.009690363192872319,
              0.002053834420303346, 0.0023253700654673, 0.0007933238173010627,
              -0.0002387693454301996)

MODES = ("full", "zero_mode_only")


@dataclass(frozen=True)
class _OrderPlan:
    s: float
    coeffs: object
    sing_amp: float
    sing_pow: float
    sing_h: float
    has_log: bool
    pair: tuple = None      # (m, d, regular, slope) for near-integer orders

    @property
    def args(self):
        return (self.s, self.coeffs, self.sing_amp, self.sing_pow,
                self.sing_h, self.has_log)


@lru_cache(maxsize=None)
def _order_plan(s):
    """Coefficients of the small-t expansion of Li_s(exp(-t))."""
    s = float(s)
    k = np.arange(EXPANSION_TERMS, dtype=float)
    signs = np.where(k % 2 == 0, 1.0, -1.0)
    n = round(s)
    if s == n and n >= 1:
        # positive integer order: zeta(1) pole is replaced by a log term
        log_index = n - 1
        zeta_vals = np.array([special.zeta(s - kk) if kk != log_index else 0.0
                              for kk in k])
        coeffs = zeta_vals * signs / special.factorial(k)
        sing_amp = (-1.0) ** log_index / math.factorial(log_index)
        sing_h = float(sum(1.0 / j for j in range(1, log_index + 1)))
        return _OrderPlan(s, kernels.prepare_coeffs(coeffs), sing_amp,
                          float(log_index), sing_h, True)
    coeffs = special.zeta(s - k) * signs / special.factorial(k)
    if n >= 1 and abs(s - n) < NEAR_INTEGER:
        # Gamma(1-s) t^(s-1) and the zeta(s-m) t^m term both have poles that
        # cancel; take them out of the kernel and merge them in _pole_pair
        m = n - 1
        coeffs[m] = 0.0
        return _OrderPlan(s, kernels.prepare_coeffs(coeffs), 0.0, 0.0, 0.0, False,
                          _pair_terms(m, s - n))
    return _OrderPlan(s, kernels.prepare_coeffs(coeffs), float(special.gamma(1.0 - s)),
                      s - 1.0, 0.0, False)


def _pair_terms(m, d):
    """Smooth pieces of the pole pair at order ``s = m + 1 + d``.

    The pair equals ``(-t)^m / m! * (regular - expm1(d (ln t + slope)) / d)``
    where ``regular = zeta(1 + d) - 1/d`` and ``d (ln t + slope)`` is the log of
    ``(pi d / sin pi d) * m! / Gamma(m + 1 + d) * t^d``.
    """
    regular = math.fsum((-d) ** j * g / math.factorial(j) for j, g in enumerate(_STIELTJES))
    slope = math.fsum(special.zeta(2.0 * j) / j * d ** (2 * j - 1) for j in range(1, 5))
    slope -= math.fsum(special.polygamma(j - 1, m + 1.0) * d ** (j - 1) / math.factorial(j)
                       for j in range(1, 8))
    return (m, d, regular, float(slope))


def _pole_pair(plan, t):
    m, d, regular, slope = plan.pair
    bracket = regular - math.expm1(d * (math.log(t) + slope)) / d
    return (-t) ** m / math.factorial(m) * bracket


def _expansion(plan, t):
    value = kernels.polylog_expansion(t, *plan.args)
    if plan.pair is not None:
        value += _pole_pair(plan, t)
    return value


def polylog_neg_log(s, t, tol=1e-12):
    """``Li_s(exp(-t))`` for real order ``s`` and ``t >= 0``.

    ``t = 0`` returns ``zeta(s)`` when ``s > 1`` and raises
    :class:`DivergenceError` otherwise. ``t = inf`` returns 0.
    """
    if t < 0 or math.isnan(t):
        raise DomainError(f"t = -ln z must be >= 0, got {t}")
    if t == 0.0:
        if s > 1.0:
            return float(special.zeta(s))
        raise DivergenceError(f"Li_{s}(1) diverges for order <= 1")
    if math.isinf(t):
        return 0.0
    plan = _order_plan(s)
    if plan.pair is not None and t < SERIES_SWITCH:
        return _expansion(plan, t)
    return kernels.li_neg_log(t, tol, SERIES_SWITCH, *plan.args)


def bose_polylog(s, z, tol=1e-12, method="auto"):
    """Bose function ``Li_s(z) = sum_{k>=1} z**k / k**s`` for ``0 <= z < 1``.

    Parameters
    ----------
    s : float
        Order, must be positive.
    z : float
        Fugacity in ``[0, 1)``.
    tol : float
        Relative truncation tolerance of the series tail bound.
    method : {"auto", "series", "expansion"}
        ``"series"`` always sums the power series; ``"expansion"`` always
        uses the expansion about ``z = 1``; ``"auto"`` picks the cheaper of
        the two by the distance ``-ln z`` from the singular point.
    """
    if not s > 0:
        raise DomainError(f"polylog order must be > 0, got {s}")
    if not 0.0 <= z < 1.0:
        raise DomainError(f"fugacity must lie in [0, 1), got {z}")
    if z == 0.0:
        return 0.0
    if method == "series":
        value = kernels.polylog_series(float(s), float(z), tol, 10**9)
        if math.isnan(value):
            raise RuntimeError("polylog series did not converge")
        return value
    t = -math.log(z)
    if method == "expansion":
        return _expansion(_order_plan(s), t)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    return polylog_neg_log(s, t, tol)


@dataclass(frozen=True)
class ThermalCloud:
    """Free Bose gas of one internal species in ``nu`` dimensions.

    In ``zero_mode_only`` mode every evaluator returns exactly zero. That is
    the variational model with its k != 0 modes removed, which is what the
    finite-volume Fock oracle computes exactly.
    """

    beta: float
    mass: float = 1.0
    nu: int = 3
    series_tol: float = 1e-12
    mode: str = "full"

    def __post_init__(self):
        if not self.beta > 0:
            raise DomainError(f"beta must be > 0, got {self.beta}")
        if not self.mass > 0:
            raise DomainError(f"mass must be > 0, got {self.mass}")
        if int(self.nu) != self.nu or self.nu < 1:
            raise DomainError(f"nu must be a positive integer, got {self.nu}")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "nu", int(self.nu))

    @property
    def zero_mode_only(self):
        return self.mode == "zero_mode_only"

    @property
    def thermal_volume_inv(self):
        """``(m / (2 pi beta))**(nu/2)``."""
        return (self.mass / (2.0 * math.pi * self.beta)) ** (0.5 * self.nu)

    def bose(self, order, x):
        """``Li_order(exp(-beta x))`` for gap ``x >= 0``; ``inf`` if divergent."""
        try:
            return polylog_neg_log(order, self.beta * x, self.series_tol)
        except DivergenceError:
            return math.inf

    def _check_mu(self, mu):
        if math.isnan(mu) or mu > 0:
            raise DomainError(f"chemical potential must be <= 0, got {mu}")

    def rho0(self, mu):
        """Density of the free gas at chemical potential ``mu <= 0``."""
        self._check_mu(mu)
        if mu == 0 and self.nu <= 2:
            raise DivergenceError(f"rho0(0) is infinite for nu = {self.nu}")
        if self.zero_mode_only:
            return 0.0
        return self.thermal_volume_inv * polylog_neg_log(
            0.5 * self.nu, -self.beta * mu, self.series_tol)

    def p0(self, mu):
        """Pressure of the free gas at chemical potential ``mu <= 0``."""
        self._check_mu(mu)
        if self.zero_mode_only:
            return 0.0
        return self.thermal_volume_inv / self.beta * polylog_neg_log(
            0.5 * self.nu + 1.0, -self.beta * mu, self.series_tol)

    def rho0_prime(self, mu):
        """Derivative ``d rho0 / d mu`` for ``mu < 0``."""
        if math.isnan(mu) or mu >= 0:
            raise DomainError(f"rho0_prime needs mu < 0, got {mu}")
        if self.zero_mode_only:
            return 0.0
        return self.thermal_volume_inv * self.beta * polylog_neg_log(
            0.5 * self.nu - 1.0, -self.beta * mu, self.series_tol)

    def solve_affine(self, order, amp, slope, target, lo, hi, lo_positive):
        """Bisect ``amp * Li_order(exp(-beta x)) + slope * x = target`` on (lo, hi).

        ``amp`` multiplies the bare Bose function; callers fold in the
        thermal prefactor. The sign of the residual at ``lo`` must be given.
        """
        plan = _order_plan(order)
        if self.zero_mode_only:
            amp = 0.0
        if plan.pair is not None:
            return _bisect_python(lambda x: amp * polylog_neg_log(order, self.beta * x,
                                                                  self.series_tol)
                                  + slope * x - target, lo, hi, lo_positive)
        return kernels.bisect_affine_li(
            amp, self.beta, slope, target, lo, hi, lo_positive, MAX_BISECT_ITER,
            self.series_tol, SERIES_SWITCH, *plan.args)


def _bisect_python(f, lo, hi, lo_positive):
    # same stopping rule as the compiled bisection
    for _ in range(MAX_BISECT_ITER):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        val = f(mid)
        if val == 0.0:
            return mid
        if (val > 0.0) == lo_positive:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
