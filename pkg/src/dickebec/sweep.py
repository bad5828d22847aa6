"""Parameter sweeps and their serialisation.

A mu-sweep records every stationary point at every grid value, with a
``selected`` flag on the equilibrium one, so that both the phase diagram and
the full set of competing pressure curves can be plotted from one file.
"""

import csv
import json
import math
from dataclasses import asdict, dataclass, fields

from .branches import critical_set
from .equilibrium import solve_equilibrium
from .model import PHASE_OF_BRANCH, ModelParams, entropy_density, thermal_density

__all__ = [
    "PhaseDiagramRow",
    "SweepResult",
    "sweep_mu",
    "phase_boundary_map",
    "locate_phase_boundaries",
    "write_sweep_csv",
    "read_sweep_csv",
    "write_critical_json",
    "read_critical_json",
    "format_float",
]

PARAM_FIELDS = tuple(f.name for f in fields(ModelParams))


def format_float(value):
    """17 significant digits, scientific notation."""
    return f"{value:.16e}"


@dataclass(frozen=True)
class PhaseDiagramRow:
    beta: float
    lam: float
    omega: float
    g: float
    epsilon: float
    mass: float
    nu: int
    series_tol: float
    mode: str
    mu: float
    selected: bool
    branch: str
    phase_label: str
    x: float
    rho: float
    alpha_plus: float
    alpha_minus: float
    alpha_b: float
    pressure: float
    entropy_density: float
    thermal_density: float


ROW_FIELDS = tuple(f.name for f in fields(PhaseDiagramRow))
_ROW_TYPES = {f.name: f.type for f in fields(PhaseDiagramRow)}


@dataclass(frozen=True)
class SweepResult:
    rows: list          # equilibrium rows, one per grid point
    candidates: list    # every stationary point, equilibrium ones included

    def candidate_pressures(self, branch):
        return [(r.mu, r.pressure) for r in self.candidates if r.branch == branch]


def _row(params, sol, selected):
    return PhaseDiagramRow(
        **params.as_dict(),
        mu=sol.mu,
        selected=selected,
        branch=str(sol.branch),
        phase_label=str(PHASE_OF_BRANCH[sol.branch]),
        x=sol.x,
        rho=sol.rho,
        alpha_plus=sol.alpha_plus,
        alpha_minus=sol.alpha_minus,
        alpha_b=sol.alpha_b,
        pressure=sol.pressure,
        entropy_density=entropy_density(params, sol.x),
        thermal_density=thermal_density(params, sol.x),
    )


def sweep_mu(params, grid):
    """Equilibrium and candidate observables on a strictly increasing mu-grid."""
    grid = [float(m) for m in grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("mu grid must be strictly increasing")
    rows, cands = [], []
    for mu in grid:
        state = solve_equilibrium(params, mu)
        for sol in state.candidates:
            row = _row(params, sol, sol is state.solution)
            cands.append(row)
            if row.selected:
                rows.append(row)
    return SweepResult(rows=rows, candidates=cands)


def phase_boundary_map(params, epsilon_grid):
    """Critical set for each level splitting in ``epsilon_grid``."""
    return [critical_set(params.replace(epsilon=float(e))) for e in epsilon_grid]


def locate_phase_boundaries(params, grid, tol=1e-12):
    """Phase changes along ``grid``, refined by bisection on the phase label.

    Returns a list of ``(mu, phase_left, phase_right)``.
    """
    labels = [solve_equilibrium(params, mu).phase_label for mu in grid]
    out = []
    for i in range(len(grid) - 1):
        if labels[i] == labels[i + 1]:
            continue
        lo, hi = grid[i], grid[i + 1]
        while hi - lo > tol * max(1.0, abs(lo)):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if solve_equilibrium(params, mid).phase_label == labels[i]:
                lo = mid
            else:
                hi = mid
        out.append((0.5 * (lo + hi), str(labels[i]), str(labels[i + 1])))
    return out


def _cell(value):
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_sweep_csv(path, result):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(ROW_FIELDS)
        for row in result.candidates:
            writer.writerow([_cell(getattr(row, name)) for name in ROW_FIELDS])


def _parse(name, text):
    kind = _ROW_TYPES[name]
    if kind is bool:
        return text == "1"
    if kind is int:
        return int(text)
    if kind is float:
        return float(text)
    return text


def read_sweep_csv(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        cands = [PhaseDiagramRow(**{k: _parse(k, v) for k, v in rec.items()})
                 for rec in reader]
    return SweepResult(rows=[r for r in cands if r.selected], candidates=cands)


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    return value


def write_critical_json(path, params, critical_sets):
    payload = {
        "params": {k: _json_safe(v) for k, v in params.as_dict().items()},
        "critical_sets": [{k: _json_safe(v) for k, v in asdict(c).items()}
                          for c in critical_sets],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_critical_json(path):
    with open(path) as fh:
        payload = json.load(fh)

    def restore(v):
        return float(v) if v in ("inf", "-inf", "nan") else v

    return [{k: restore(v) for k, v in c.items()} for c in payload["critical_sets"]]
