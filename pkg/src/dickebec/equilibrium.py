"""Equilibrium selection by maximal pressure, and transition diagnostics."""

import math
from dataclasses import dataclass

from .branches import critical_set, solve_case1, solve_case2, solve_case3
from .errors import NoCandidateError
from .model import PHASE_OF_BRANCH, EquilibriumState, entropy_density, thermal_density

__all__ = [
    "candidates",
    "solve_equilibrium",
    "pressure",
    "Transition",
    "transition_report",
    "FIRST_ORDER_RTOL",
]

# density jump (relative) above which a transition is called first order
FIRST_ORDER_RTOL = 1e-6


def candidates(params, mu):
    """All stationary points at ``mu``.

    Ordered so that exact pressure ties resolve to the branch that is
    continuous from below: Normal, MinusCondensate, then superradiant.
    """
    out = []
    sol = solve_case1(params, mu)
    if sol is not None:
        out.append(sol)
    sol = solve_case3(params, mu)
    if sol is not None:
        out.append(sol)
    out.extend(solve_case2(params, mu))
    return out


def _state(params, sol, cands=()):
    return EquilibriumState(
        solution=sol,
        phase_label=PHASE_OF_BRANCH[sol.branch],
        condensate_density_plus=sol.alpha_plus**2,
        condensate_density_minus=sol.alpha_minus**2,
        photon_density=sol.alpha_b**2,
        thermal_density=thermal_density(params, sol.x),
        entropy_density=entropy_density(params, sol.x),
        free_energy_density=-sol.pressure,
        candidates=tuple(cands),
    )


def solve_equilibrium(params, mu):
    """Equilibrium state at chemical potential ``mu``."""
    cands = candidates(params, mu)
    if not cands:
        raise NoCandidateError(f"no stationary point at mu = {mu}")
    best = cands[0]
    for sol in cands[1:]:
        if sol.pressure > best.pressure:
            best = sol
    return _state(params, best, cands)


def pressure(params, mu):
    return solve_equilibrium(params, mu).pressure


@dataclass(frozen=True)
class Transition:
    """One-sided limits of the equilibrium observables at a critical ``mu``."""

    mu: float
    phase_left: str
    phase_right: str
    rho_left: float
    rho_right: float
    pressure_left: float
    pressure_right: float
    condensate_plus_left: float
    condensate_plus_right: float
    condensate_minus_left: float
    condensate_minus_right: float
    photon_left: float
    photon_right: float
    order: str

    @property
    def density_jump(self):
        return self.rho_right - self.rho_left

    @property
    def pressure_gap(self):
        return self.pressure_right - self.pressure_left

    def as_dict(self):
        d = dict(self.__dict__)
        d["density_jump"] = self.density_jump
        d["pressure_gap"] = self.pressure_gap
        return d


def _limits(params, mu, delta):
    left = solve_equilibrium(params, mu - delta)
    right = solve_equilibrium(params, mu + delta)
    # extrapolate pressures back to mu using dP/dmu = rho on each side
    p_left = left.pressure + delta * left.rho
    p_right = right.pressure - delta * right.rho
    jump = right.rho - left.rho
    scale = max(abs(left.rho), abs(right.rho))
    order = "first" if abs(jump) > FIRST_ORDER_RTOL * scale else "continuous"
    return Transition(
        mu=mu,
        phase_left=str(left.phase_label),
        phase_right=str(right.phase_label),
        rho_left=left.rho,
        rho_right=right.rho,
        pressure_left=p_left,
        pressure_right=p_right,
        condensate_plus_left=left.condensate_density_plus,
        condensate_plus_right=right.condensate_density_plus,
        condensate_minus_left=left.condensate_density_minus,
        condensate_minus_right=right.condensate_density_minus,
        photon_left=left.photon_density,
        photon_right=right.photon_density,
        order=order,
    )


def transition_report(params, delta=1e-7):
    """Transitions at the critical potentials of ``params``.

    Returns ``(critical_set, transitions)``; one entry per distinct finite
    critical potential, in increasing order.
    """
    crit = critical_set(params)
    mus = sorted({m for m in (crit.mu_c1, crit.mu_c2) if math.isfinite(m)})
    return crit, [_limits(params, mu, delta) for mu in mus]
