"""Stationary points of the free-energy functional and critical potentials.

In the gap variable ``x = lambda rho - mu`` the three families of solutions
of the Euler-Lagrange equations reduce to scalar equations:

    Normal            2 lambda rho0(-x) - x     = mu,   x >= eps
    Superradiant      2 lambda rho0(-x) + eta x = mu,   x >= eps
    MinusCondensate   x = eps

The left-hand sides are monotone (the superradiant one piecewise, around its
minimiser ``x0``), so every root is found by bisection.
"""

import math
import sys
from dataclasses import dataclass
from functools import lru_cache

from .errors import BracketError
from .model import (
    Branch,
    BranchSolution,
    pressure_minus_condensate,
    pressure_normal,
    pressure_superradiant,
)

__all__ = [
    "CriticalSet",
    "landmarks",
    "solve_case1",
    "solve_case2",
    "solve_case3",
    "critical_set",
    "normal_curve",
    "superradiant_curve",
]

_MAX_DOUBLINGS = 1000      # enough to span the double range from 1
_PRESSURE_ULPS = 64
_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class Landmarks:
    """Parameter-only quantities shared by the branch solvers."""

    x0: float
    mu0: float
    mu1: float
    mu2: float
    rho_edge: float        # 2 lambda rho0(-eps), inf if divergent


@dataclass(frozen=True)
class CriticalSet:
    epsilon: float
    x0: float
    mu0: float
    mu1: float
    mu2: float
    mu_c1: float
    mu_c2: float
    intermediate_phase_present: bool
    regime: str

    def as_dict(self):
        return dict(self.__dict__)


def _amp(params):
    # coefficient of Li_{nu/2}(e^{-beta x}) in 2 lambda rho0(-x)
    return 2.0 * params.lam * params.cloud.thermal_volume_inv


def _two_lambda_rho0(params, x):
    """``2 lambda rho0(-x)``, ``inf`` where rho0 diverges."""
    if params.cloud.zero_mode_only:
        return 0.0
    return _amp(params) * params.cloud.bose(0.5 * params.nu, x)


def _grow(f, start, want_negative):
    """Double ``start`` until ``f`` has the wanted sign."""
    hi = start
    for _ in range(_MAX_DOUBLINGS):
        val = f(hi)
        if (val < 0) == want_negative and val != 0:
            return hi
        hi *= 2.0
    raise BracketError("no sign change found while growing the bracket")


def _initial_hi(params, lo):
    return max(max(params.epsilon, 1.0) * 2.0, 2.0 * lo)


def _minimiser(params):
    """Gap ``x0`` minimising ``2 lambda rho0(-x) + eta x`` and its minimum ``mu0``."""
    eta = params.eta
    cloud = params.cloud
    nu = params.nu
    amp_prime = _amp(params) * params.beta   # coefficient of Li_{nu/2-1}

    def slope(x):
        if cloud.zero_mode_only:
            return -eta
        return amp_prime * cloud.bose(0.5 * nu - 1.0, x) - eta

    if math.isinf(eta):
        return 0.0, math.inf
    if slope(0.0) <= 0:
        # curve increasing on x > 0: minimum sits at the boundary
        x0 = 0.0
    else:
        hi = _grow(slope, _initial_hi(params, 0.0), want_negative=True)
        x0 = cloud.solve_affine(0.5 * nu - 1.0, amp_prime, 0.0, eta, 0.0, hi, True)
    return x0, _two_lambda_rho0(params, x0) + eta * x0


@lru_cache(maxsize=256)
def landmarks(params):
    x0, mu0 = _minimiser(params)
    eps = params.epsilon
    rho_edge = _two_lambda_rho0(params, eps)
    mu1 = rho_edge - eps
    mu2 = math.inf if math.isinf(params.eta) else rho_edge + params.eta * eps
    return Landmarks(x0=x0, mu0=mu0, mu1=mu1, mu2=mu2, rho_edge=rho_edge)


def _normal_solution(params, x, mu):
    return BranchSolution(Branch.NORMAL, mu, x, (x + mu) / params.lam,
                          0.0, 0.0, 0.0, pressure_normal(params, x, mu))


def _superradiant_solution(params, x, mu, branch):
    g, omega, eps = params.g, params.omega, params.epsilon
    a_plus = 2.0 / g * math.sqrt(omega * (x - eps))
    a_minus = 2.0 / g * math.sqrt(omega * (x + eps))
    a_b = -g / (2.0 * omega) * a_plus * a_minus
    return BranchSolution(branch, mu, x, (x + mu) / params.lam, a_plus, a_minus,
                          a_b, pressure_superradiant(params, x, mu))


def solve_case1(params, mu):
    """Normal (no condensate) solution, or ``None`` when ``mu > mu1``."""
    lm = landmarks(params)
    eps = params.epsilon
    if mu > lm.mu1:
        return None
    if mu == lm.mu1:
        return _normal_solution(params, eps, mu)
    amp = _amp(params)
    order = 0.5 * params.nu

    def resid(x):
        return _two_lambda_rho0(params, x) - x - mu

    hi = _grow(resid, _initial_hi(params, eps), want_negative=True)
    x = params.cloud.solve_affine(order, amp, -1.0, mu, eps, hi, True)
    return _normal_solution(params, x, mu)


def solve_case2(params, mu):
    """Superradiant solutions at ``mu``: zero, one or two of them.

    The upper root (``Branch.SUPERRADIANT``) comes first when both exist.
    """
    if math.isinf(params.eta):
        return []
    lm = landmarks(params)
    eps, eta = params.epsilon, params.eta
    if mu < lm.mu0:
        return []
    if mu == lm.mu0:
        return ([_superradiant_solution(params, lm.x0, mu, Branch.SUPERRADIANT)]
                if lm.x0 >= eps else [])
    amp = _amp(params)
    order = 0.5 * params.nu

    def resid(x):
        return _two_lambda_rho0(params, x) + eta * x - mu

    out = []
    lo = max(lm.x0, eps)
    r_lo = resid(lo)
    if r_lo == 0:
        out.append(_superradiant_solution(params, lo, mu, Branch.SUPERRADIANT))
    elif r_lo < 0:
        hi = _grow(resid, _initial_hi(params, lo), want_negative=False)
        x = params.cloud.solve_affine(order, amp, eta, mu, lo, hi, False)
        out.append(_superradiant_solution(params, x, mu, Branch.SUPERRADIANT))
    if eps < lm.x0 and mu <= lm.mu2:
        if mu == lm.mu2:
            x = eps
        else:
            x = params.cloud.solve_affine(order, amp, eta, mu, eps, lm.x0, True)
        out.append(_superradiant_solution(params, x, mu, Branch.SUPERRADIANT_LOWER))
    return out


def solve_case3(params, mu):
    """Lower-level condensate on the boundary ``x = eps``; ``None`` below ``mu1``."""
    lm = landmarks(params)
    eps = params.epsilon
    if not mu >= lm.mu1:
        return None
    rho = (mu + eps) / params.lam
    radicand = rho - lm.rho_edge / params.lam
    if mu == lm.mu1 or radicand < 0:
        # only rounding can make the radicand negative here
        radicand = 0.0
    return BranchSolution(Branch.MINUS_CONDENSATE, mu, eps, rho, 0.0,
                          math.sqrt(radicand), 0.0,
                          pressure_minus_condensate(params, mu))


def normal_curve(params, mu):
    """Pressure of the no-superradiance family: Normal below mu1, MinusCondensate above."""
    if mu <= landmarks(params).mu1:
        return solve_case1(params, mu).pressure
    return pressure_minus_condensate(params, mu)


def superradiant_curve(params, mu):
    """Pressure of the upper superradiant root, ``None`` where it does not exist."""
    sols = solve_case2(params, mu)
    if sols and sols[0].branch is Branch.SUPERRADIANT:
        return sols[0].pressure
    return None


def _bisect_mu(f, lo, hi, max_iter=2000):
    """Root of an increasing ``f`` with ``f(lo) < 0 < f(hi)``, to full precision."""
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _regime(params, lm):
    eps = params.epsilon
    if math.isinf(params.eta):
        return "decoupled"
    if eps == 0:
        return "c"
    if eps >= lm.x0:
        return "a"
    return "b1" if lm.mu1 < lm.mu0 else "b2"


def critical_set(params):
    """Critical gaps and chemical potentials for ``params``.

    ``mu_c2`` is where the superradiant pressure overtakes the pressure of
    the competing family (Normal, continued by MinusCondensate above mu1).
    The difference of the two is strictly increasing, so the crossing is
    unique. ``mu_c1`` equals ``mu1`` if that lies below ``mu_c2``, in which
    case the lower-level-only phase occupies ``(mu1, mu_c2)``.
    """
    lm = landmarks(params)
    eps = params.epsilon
    regime = _regime(params, lm)
    if regime == "decoupled":
        return CriticalSet(eps, lm.x0, lm.mu0, lm.mu1, lm.mu2, lm.mu1, math.inf,
                           math.isfinite(lm.mu1), regime)
    if eps >= lm.x0:
        mu_c2 = lm.mu2
    else:
        def diff(mu):
            return superradiant_curve(params, mu) - normal_curve(params, mu)

        def unresolved(mu, d):
            # |D| within rounding of the pressures themselves
            return abs(d) <= _PRESSURE_ULPS * _EPS * abs(normal_curve(params, mu))

        lo = lm.mu0
        d_lo = diff(lo)
        hi = None
        if not d_lo < 0:
            # happens when x0 is so small (nu = 4) that D never leaves the
            # rounding band on (mu0, mu2); any point there is the crossing
            if not unresolved(lo, d_lo):
                raise BracketError(f"superradiant branch already dominant at mu0 = {lo}")
            hi = lo
        else:
            # walk up from mu0; mu2 caps the walk and can sit near the
            # overflow range when rho0(-eps) is huge (nu <= 2, tiny eps)
            base, step = lo, 1.0
            for _ in range(_MAX_DOUBLINGS):
                cand = base + step
                if cand >= lm.mu2:
                    break
                if diff(cand) > 0:
                    hi = cand
                    break
                lo = cand
                step *= 2.0
            if hi is None:
                if not math.isfinite(lm.mu2):
                    raise BracketError("no pressure crossing found above mu0")
                hi = lm.mu2
                d_hi = diff(hi)
                if not d_hi > 0:
                    if not unresolved(hi, d_hi):
                        raise BracketError(f"superradiant branch not dominant at mu2 = {hi}")
                    lo = hi
        mu_c2 = lo if lo == hi else _bisect_mu(diff, lo, hi)
    mu_c1 = lm.mu1 if lm.mu1 < mu_c2 else mu_c2
    return CriticalSet(eps, lm.x0, lm.mu0, lm.mu1, lm.mu2, mu_c1, mu_c2,
                       mu_c1 < mu_c2, regime)
