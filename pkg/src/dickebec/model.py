"""Model parameters, variational states and the free-energy functional.

Candidate states are products of quasi-free states parameterised by the real
condensate amplitudes ``alpha_plus, alpha_minus`` (k = 0 bosons of the upper
and lower internal level), the photon amplitude ``alpha_b`` and the thermal
occupations, which at their conditional optimum depend only on the gap

    x = lambda * rho - mu  >=  epsilon.
"""

import enum
import math
from dataclasses import dataclass, field, fields
from functools import cached_property

from .errors import ConstraintError, DivergenceError, DomainError, StabilityViolation
from .special_functions import ThermalCloud

__all__ = [
    "Branch",
    "Phase",
    "ModelParams",
    "BranchSolution",
    "EquilibriumState",
    "validate_params",
    "pressure_normal",
    "pressure_superradiant",
    "pressure_minus_condensate",
    "energy_density",
    "entropy_density",
    "free_energy_density",
    "momentum_distribution",
    "thermal_density",
    "euler_lagrange_residuals",
]


class Branch(str, enum.Enum):
    NORMAL = "Normal"
    SUPERRADIANT = "Superradiant"
    SUPERRADIANT_LOWER = "SuperradiantLower"
    MINUS_CONDENSATE = "MinusCondensate"

    def __str__(self):
        return self.value


class Phase(str, enum.Enum):
    NO_BEC = "NoBEC"
    MINUS_ONLY_BEC = "MinusOnlyBEC"
    SUPERRADIANT_BEC = "SuperradiantBEC"

    def __str__(self):
        return self.value


PHASE_OF_BRANCH = {
    Branch.NORMAL: Phase.NO_BEC,
    Branch.MINUS_CONDENSATE: Phase.MINUS_ONLY_BEC,
    Branch.SUPERRADIANT: Phase.SUPERRADIANT_BEC,
    Branch.SUPERRADIANT_LOWER: Phase.SUPERRADIANT_BEC,
}


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the model. Construction enforces thermodynamic stability.

    ``lam`` is the mean-field repulsion, ``omega`` the laser frequency, ``g``
    the matter-light coupling and ``epsilon`` the splitting of the two
    internal levels of the k = 0 bosons. ``mode`` is passed through to
    :class:`ThermalCloud`.
    """

    beta: float
    lam: float
    omega: float
    g: float
    epsilon: float = 0.0
    mass: float = 1.0
    nu: int = 3
    series_tol: float = 1e-12
    mode: str = "full"

    def __post_init__(self):
        for name in ("beta", "lam", "omega", "g", "epsilon", "mass", "series_tol"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise DomainError(f"{name} must be a finite number, got {value!r}")
            object.__setattr__(self, name, float(value))
        for name in ("beta", "lam", "omega", "mass", "series_tol"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)}")
        for name in ("g", "epsilon"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.lam <= self.g**2 / (8.0 * self.omega):
            raise StabilityViolation(
                f"unstable couplings: need lambda > g^2/(8 Omega), got lambda = "
                f"{self.lam} <= {self.g**2 / (8.0 * self.omega)}")
        # cloud construction validates nu and mode
        self.cloud

    @cached_property
    def cloud(self):
        return ThermalCloud(beta=self.beta, mass=self.mass, nu=self.nu,
                            series_tol=self.series_tol, mode=self.mode)

    @property
    def eta(self):
        """Stability margin ``8 Omega lambda / g^2 - 1``; ``inf`` when g = 0."""
        if self.g == 0:
            return math.inf
        return 8.0 * self.omega * self.lam / self.g**2 - 1.0

    def replace(self, **changes):
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return ModelParams(**values)

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


_ALIASES = {"lambda": "lam", "lambda_": "lam", "Omega": "omega", "eps": "epsilon", "m": "mass"}


def validate_params(raw):
    """Build :class:`ModelParams` from a mapping of raw values.

    Accepts the config-file spelling ``lambda`` for ``lam``. Raises
    :class:`StabilityViolation` or :class:`DomainError`.
    """
    known = {f.name for f in fields(ModelParams)}
    values = {}
    for key, value in raw.items():
        name = _ALIASES.get(key, key)
        if name not in known:
            raise DomainError(f"unknown parameter {key!r}")
        if name == "mode":
            values[name] = str(value)
        elif name == "nu":
            nu = float(value)
            if nu != int(nu):
                raise DomainError(f"nu must be an integer, got {value!r}")
            values[name] = int(nu)
        else:
            values[name] = float(value)
    missing = {"beta", "lam", "omega", "g"} - values.keys()
    if missing:
        raise DomainError(f"missing parameters: {sorted(missing)}")
    return ModelParams(**values)


@dataclass(frozen=True)
class BranchSolution:
    """One stationary point of the free-energy functional at fixed ``mu``."""

    branch: Branch
    mu: float
    x: float
    rho: float
    alpha_plus: float
    alpha_minus: float
    alpha_b: float
    pressure: float


@dataclass(frozen=True)
class EquilibriumState:
    solution: BranchSolution
    phase_label: Phase
    condensate_density_plus: float
    condensate_density_minus: float
    photon_density: float
    thermal_density: float
    entropy_density: float
    free_energy_density: float
    candidates: tuple = field(default=(), repr=False, compare=False)

    @property
    def mu(self):
        return self.solution.mu

    @property
    def x(self):
        return self.solution.x

    @property
    def rho(self):
        return self.solution.rho

    @property
    def pressure(self):
        return self.solution.pressure


def _thermal_pressure(params, x):
    return 2.0 * params.cloud.p0(-x)


def pressure_normal(params, x, mu):
    """Pressure of a no-condensate stationary point at gap ``x``."""
    return _thermal_pressure(params, x) + (x + mu) ** 2 / (2.0 * params.lam)


def pressure_superradiant(params, x, mu):
    """Pressure of a superradiant stationary point at gap ``x``."""
    lam, eps = params.lam, params.epsilon
    k = 4.0 * params.omega / params.g**2          # (eta + 1) / (2 lambda)
    return (_thermal_pressure(params, x) + (x + mu) ** 2 / (2.0 * lam)
            - k * x * x + k * eps * eps)


def pressure_minus_condensate(params, mu):
    """Pressure of the stationary point with only the lower level condensed."""
    eps = params.epsilon
    return _thermal_pressure(params, eps) + (mu + eps) ** 2 / (2.0 * params.lam)


def thermal_density(params, x):
    """Density ``2 rho0(-x)`` of the two non-condensed clouds."""
    return 2.0 * params.cloud.rho0(-x)


def entropy_density(params, x):
    """Entropy density of the two thermal clouds at gap ``x``.

    Uses the free-gas identity ``s = beta (e + p + x rho0)`` with kinetic
    energy density ``e = (nu/2) p0``. The photon coherent state carries no
    entropy.
    """
    cloud = params.cloud
    if x < 0 or (x == 0 and cloud.nu <= 2):
        raise DivergenceError(f"entropy density undefined at x = {x} for nu = {cloud.nu}")
    if math.isinf(x):
        return 0.0
    nu = cloud.nu
    return 2.0 * params.beta * ((0.5 * nu + 1.0) * cloud.p0(-x) + x * cloud.rho0(-x))


def energy_density(params, mu, alpha_plus, alpha_minus, alpha_b, x):
    """Energy density (of ``H - mu N``) of a candidate state.

    The thermal occupations are taken at their conditional optimum for the
    gap ``x``; the total density then follows from the amplitudes.
    """
    eps = params.epsilon
    if x < eps:
        raise ConstraintError(f"gap x = {x} below epsilon = {eps}")
    cloud = params.cloud
    rho_th = 2.0 * cloud.rho0(-x)
    rho = alpha_plus**2 + alpha_minus**2 + rho_th
    # int eps(k) A(k) d^nu k / (2pi)^nu = (nu/2) p0 per species
    kinetic = 2.0 * (0.5 * cloud.nu) * cloud.p0(-x)
    return (-(mu - eps) * alpha_plus**2 - (mu + eps) * alpha_minus**2
            + kinetic - mu * rho_th
            + params.g * alpha_plus * alpha_minus * alpha_b
            + params.omega * alpha_b**2
            + 0.5 * params.lam * rho * rho)


def free_energy_density(params, solution):
    """``energy - entropy / beta`` evaluated independently of the stored pressure."""
    s = solution
    return (energy_density(params, s.mu, s.alpha_plus, s.alpha_minus, s.alpha_b, s.x)
            - entropy_density(params, s.x) / params.beta)


def momentum_distribution(params, x, k):
    """Occupation of momentum ``k`` in either thermal cloud at gap ``x``."""
    if x < 0 or k < 0:
        raise DomainError("x and k must be non-negative")
    y = params.beta * (0.5 * k * k / params.mass + x)
    if y == 0:
        raise DivergenceError("occupation diverges at k = 0, x = 0")
    return math.exp(-y) / -math.expm1(-y)


def euler_lagrange_residuals(params, solution):
    """Residuals of the three amplitude equations at ``solution``."""
    s, g, eps = solution, params.g, params.epsilon
    gap = params.lam * s.rho - s.mu
    return (
        2.0 * (gap + eps) * s.alpha_plus + g * s.alpha_minus * s.alpha_b,
        2.0 * (gap - eps) * s.alpha_minus + g * s.alpha_plus * s.alpha_b,
        2.0 * params.omega * s.alpha_b + g * s.alpha_plus * s.alpha_minus,
    )
