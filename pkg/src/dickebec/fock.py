"""Exact finite-volume grand-canonical trace of the zero-mode model.

Only the two k = 0 boson modes and the photon mode are kept:

    H = eps (N+ - N-) + Omega M + g / (2 sqrt V) (a+* a- b + h.c.)
        + lambda / (2V) N^2 - mu N

The interaction moves (n+, n-, m) by (+1, -1, -1), so both ``N = n+ + n-``
and ``K = n+ + m`` are conserved and H is block diagonal in (N, K). Inside a
block the basis is labelled by n+ alone and the block is tridiagonal.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal, eigvalsh_tridiagonal
from scipy.special import logsumexp

from .equilibrium import solve_equilibrium
from .errors import TruncationError

__all__ = [
    "FockSector",
    "FockCouplings",
    "OracleConfig",
    "OracleResult",
    "sector",
    "iter_sectors",
    "build_sector_hamiltonian",
    "build_full_hamiltonian",
    "partition_function",
    "finite_volume_pressure",
    "variational_zero_mode_pressure",
    "auto_cutoffs",
    "convergence_table",
    "instability_scan",
    "OracleRow",
]

CUT_WEIGHT = 1e-12


@dataclass(frozen=True)
class FockSector:
    n_total: int
    k_total: int
    basis: tuple            # (n_plus, n_minus, m) triples, n_plus increasing

    @property
    def dimension(self):
        return len(self.basis)


@dataclass(frozen=True)
class FockCouplings:
    """Bare couplings without the stability check of :class:`ModelParams`.

    Only needed to exhibit the unbounded partition sum at
    ``lambda <= g^2 / (8 Omega)``; anything with these attributes works as
    ``OracleConfig.params``.
    """

    beta: float
    lam: float
    omega: float
    g: float
    epsilon: float = 0.0

    @classmethod
    def from_params(cls, params):
        return cls(params.beta, params.lam, params.omega, params.g, params.epsilon)


@dataclass(frozen=True)
class OracleConfig:
    volume: float
    n_max: int
    m_max: int
    mu: float
    params: object          # ModelParams or FockCouplings

    @property
    def beta(self):
        return self.params.beta


def _n_plus_range(n_total, k_total, m_max):
    return max(0, k_total - m_max), min(n_total, k_total)


def sector(n_total, k_total, m_max):
    lo, hi = _n_plus_range(n_total, k_total, m_max)
    basis = tuple((p, n_total - p, k_total - p) for p in range(lo, hi + 1))
    return FockSector(n_total, k_total, basis)


def iter_sectors(n_max, m_max):
    """All non-empty (N, K) blocks of the truncated space."""
    for n in range(n_max + 1):
        for k in range(n + m_max + 1):
            lo, hi = _n_plus_range(n, k, m_max)
            if lo <= hi:
                yield n, k


def _tridiagonal(n_total, k_total, cfg):
    p = cfg.params
    lo, hi = _n_plus_range(n_total, k_total, cfg.m_max)
    n_plus = np.arange(lo, hi + 1, dtype=float)
    m = k_total - n_plus
    v = cfg.volume
    diag = (p.epsilon * (2.0 * n_plus - n_total) + p.omega * m
            + p.lam * n_total**2 / (2.0 * v) - cfg.mu * n_total)
    np_lo = n_plus[:-1]
    off = (p.g / (2.0 * math.sqrt(v))
           * np.sqrt((np_lo + 1.0) * (n_total - np_lo) * (k_total - np_lo)))
    return diag, off


def build_sector_hamiltonian(sec, cfg):
    """Dense symmetric matrix of H restricted to ``sec``."""
    diag, off = _tridiagonal(sec.n_total, sec.k_total, cfg)
    h = np.diag(diag)
    if off.size:
        h += np.diag(off, 1) + np.diag(off, -1)
    return h


def build_full_hamiltonian(cfg):
    """H on the whole truncated space without blocking. For small cutoffs only.

    Returns ``(basis, matrix)`` with basis triples in lexicographic order.
    """
    p = cfg.params
    basis = [(a, b, m) for a in range(cfg.n_max + 1)
             for b in range(cfg.n_max + 1 - a) for m in range(cfg.m_max + 1)]
    index = {s: i for i, s in enumerate(basis)}
    h = np.zeros((len(basis), len(basis)))
    coup = p.g / (2.0 * math.sqrt(cfg.volume))
    for i, (a, b, m) in enumerate(basis):
        n = a + b
        h[i, i] = (p.epsilon * (a - b) + p.omega * m
                   + p.lam * n * n / (2.0 * cfg.volume) - cfg.mu * n)
        # a+* a- b |a, b, m> = sqrt((a+1) b m) |a+1, b-1, m-1>
        j = index.get((a + 1, b - 1, m - 1))
        if j is not None and b > 0 and m > 0:
            h[j, i] += coup * math.sqrt((a + 1) * b * m)
            h[i, j] += coup * math.sqrt((a + 1) * b * m)
    return basis, h


@dataclass(frozen=True)
class OracleResult:
    volume: float
    n_max: int
    m_max: int
    log_z: float
    pressure: float
    n_cut_ratio: float      # max Boltzmann weight / Z over states with N = n_max
    m_cut_ratio: float      # same over states with m = m_max
    n_sectors: int

    @property
    def cut_ratio(self):
        return max(self.n_cut_ratio, self.m_cut_ratio)


def partition_function(cfg):
    """log Z over the truncated space and the cut-weight diagnostic.

    The cut weight of a boundary basis state |b> (N = n_max or m = m_max)
    is the diagonal element <b| exp(-beta H) |b>.
    """
    beta = cfg.beta
    log_terms = []
    log_cut_n = log_cut_m = -math.inf
    count = 0
    for n, k in iter_sectors(cfg.n_max, cfg.m_max):
        count += 1
        diag, off = _tridiagonal(n, k, cfg)
        on_n_cut = n == cfg.n_max
        has_m_cut = k >= cfg.m_max       # first basis state has m = m_max
        if not (on_n_cut or has_m_cut):
            evals = eigvalsh_tridiagonal(diag, off) if off.size else diag
            log_terms.append(logsumexp(-beta * evals))
            continue
        if off.size:
            evals, evecs = eigh_tridiagonal(diag, off)
        else:
            evals, evecs = diag, np.ones((1, 1))
        shift = -beta * evals
        ref = shift.max()
        w = np.exp(shift - ref)
        log_terms.append(ref + math.log(w.sum()))
        dens = (evecs**2) @ w            # diagonal of exp(-beta H), scaled
        if on_n_cut:
            log_cut_n = max(log_cut_n, ref + math.log(dens.max()))
        if has_m_cut:
            log_cut_m = max(log_cut_m, ref + math.log(dens[0]))
    log_z = float(logsumexp(log_terms))
    return OracleResult(
        volume=cfg.volume,
        n_max=cfg.n_max,
        m_max=cfg.m_max,
        log_z=log_z,
        pressure=log_z / (beta * cfg.volume),
        n_cut_ratio=math.exp(log_cut_n - log_z),
        m_cut_ratio=math.exp(log_cut_m - log_z),
        n_sectors=count,
    )


def finite_volume_pressure(cfg, check_truncation=True):
    """``(1 / beta V) ln Tr exp(-beta H)`` on the truncated Fock space."""
    res = partition_function(cfg)
    if check_truncation and not res.cut_ratio < CUT_WEIGHT:
        raise TruncationError(
            f"cut weight {res.cut_ratio:.3e} >= {CUT_WEIGHT:.0e} at V = {cfg.volume}, "
            f"n_max = {cfg.n_max}, m_max = {cfg.m_max}")
    return res.pressure


def variational_zero_mode_pressure(params, mu):
    """Infinite-volume pressure of the same zero-mode model, from the variational solver."""
    return solve_equilibrium(params.replace(mode="zero_mode_only"), mu).pressure


def auto_cutoffs(params, mu, volume, max_rounds=20):
    """Cutoffs that pass the cut-weight check, grown by 25 % per failing side.

    The starting guess puts each cutoff about ``ln(1/CUT_WEIGHT)`` thermal
    units above the variational occupation. Returns the accepted
    :class:`OracleResult`.
    """
    state = solve_equilibrium(params.replace(mode="zero_mode_only"), mu)
    beta = params.beta
    depth = -math.log(CUT_WEIGHT)
    n_mean = state.rho * volume
    m_mean = state.photon_density * volume
    n_max = int(math.ceil(n_mean + math.sqrt(2.0 * depth * volume / (beta * params.lam)) + 4))
    m_max = int(math.ceil(m_mean + 4.0 * math.sqrt(m_mean + 1.0) + depth / (beta * params.omega)))
    for _ in range(max_rounds):
        res = partition_function(OracleConfig(volume, n_max, m_max, mu, params))
        if res.cut_ratio < CUT_WEIGHT:
            return res
        if not res.n_cut_ratio < CUT_WEIGHT:
            n_max = int(math.ceil(1.25 * n_max))
        if not res.m_cut_ratio < CUT_WEIGHT:
            m_max = int(math.ceil(1.25 * m_max))
    raise TruncationError(f"no adequate cutoffs found for V = {volume}")


@dataclass(frozen=True)
class OracleRow:
    volume: float
    n_max: int
    m_max: int
    pressure: float
    variational: float
    gap: float
    cut_ratio: float


def convergence_table(params, mu, volumes, n_max=None, m_max=None):
    """Finite-volume pressures against the variational zero-mode pressure.

    Cutoffs are chosen per volume by :func:`auto_cutoffs` unless both are given.
    """
    p_var = variational_zero_mode_pressure(params, mu)
    rows = []
    for v in volumes:
        if n_max is not None and m_max is not None:
            cfg = OracleConfig(float(v), int(n_max), int(m_max), mu, params)
            res = partition_function(cfg)
            if not res.cut_ratio < CUT_WEIGHT:
                raise TruncationError(
                    f"cut weight {res.cut_ratio:.3e} too large at V = {v}")
        else:
            res = auto_cutoffs(params, mu, float(v))
        rows.append(OracleRow(res.volume, res.n_max, res.m_max, res.pressure,
                              p_var, res.pressure - p_var, res.cut_ratio))
    return rows


def instability_scan(couplings, mu, volume, n_max_values):
    """``p_V`` on a ladder of boson cutoffs, with no truncation check.

    The photon cutoff grows with ``n_max``: along the unstable direction the
    photon number scales like ``g^2 N^2 / (16 Omega^2 V)``, so this keeps
    twice that. Returns a list of ``(n_max, m_max, p_V)``.
    """
    c = couplings
    out = []
    for n_max in n_max_values:
        m_max = int(math.ceil(c.g**2 * n_max**2 / (8.0 * c.omega**2 * volume))) + 10
        res = partition_function(OracleConfig(float(volume), int(n_max), m_max, mu, c))
        out.append((int(n_max), m_max, res.pressure))
    return out
