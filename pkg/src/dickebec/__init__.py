"""Equilibrium thermodynamics of a Dicke-type model of BEC superradiance.

Typical use::

    from dickebec import ModelParams, solve_equilibrium, critical_set

    p = ModelParams(beta=1.0, lam=1.0, omega=1.0, g=1.0, epsilon=0.2)
    state = solve_equilibrium(p, mu=2.0)
    crit = critical_set(p)
"""

from ._backend import BACKEND
from .branches import CriticalSet, critical_set, landmarks, solve_case1, solve_case2, solve_case3
from .equilibrium import Transition, candidates, pressure, solve_equilibrium, transition_report
from .errors import (
    BracketError,
    ConstraintError,
    DickeBECError,
    DivergenceError,
    DomainError,
    NoCandidateError,
    StabilityViolation,
    TruncationError,
)
from .model import (
    Branch,
    BranchSolution,
    EquilibriumState,
    ModelParams,
    Phase,
    entropy_density,
    euler_lagrange_residuals,
    free_energy_density,
    validate_params,
)
from .special_functions import ThermalCloud, bose_polylog, polylog_neg_log

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Branch",
    "BranchSolution",
    "BracketError",
    "ConstraintError",
    "CriticalSet",
    "DickeBECError",
    "DivergenceError",
    "DomainError",
    "EquilibriumState",
    "ModelParams",
    "NoCandidateError",
    "Phase",
    "StabilityViolation",
    "ThermalCloud",
    "Transition",
    "TruncationError",
    "bose_polylog",
    "candidates",
    "critical_set",
    "entropy_density",
    "euler_lagrange_residuals",
    "free_energy_density",
    "landmarks",
    "polylog_neg_log",
    "pressure",
    "solve_case1",
    "solve_case2",
    "solve_case3",
    "solve_equilibrium",
    "transition_report",
    "validate_params",
]
