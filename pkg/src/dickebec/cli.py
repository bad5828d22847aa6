"""Command-line front end: ``dickebec {solve,sweep,critical,oracle}``.

The config file is flat ``key = value`` text (``#`` starts a comment) with
keys beta, lambda, omega, g, epsilon, mass, nu, series_tol and mode.
Command-line parameter flags override the file.

Exit codes: 0 success, 1 bad input, 2 unstable couplings.
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from .equilibrium import solve_equilibrium, transition_report
from .errors import DickeBECError, StabilityViolation
from .fock import convergence_table
from .model import validate_params
from .sweep import (
    format_float,
    phase_boundary_map,
    sweep_mu,
    write_critical_json,
    write_sweep_csv,
)

__all__ = ["main", "build_parser", "read_config", "ConfigError"]

CONFIG_KEYS = ("beta", "lambda", "omega", "g", "epsilon", "mass", "nu", "series_tol", "mode")
STABILITY_HINT = "stability requires lambda > g^2/(8 Omega)"


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def read_config(path):
    """Parse a flat ``key = value`` file into a dict of strings."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from None
    out = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in out:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _params(args):
    raw = read_config(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        value = getattr(args, "p_" + key)
        if value is not None:
            raw[key] = value
    try:
        return validate_params(raw)
    except StabilityViolation:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def _fmt(value):
    """Terminal rendering: 12 significant digits."""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def _dump_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_solve(args, out):
    params = _params(args)
    state = solve_equilibrium(params, args.mu)
    sol = state.solution
    fields = [
        ("phase", str(state.phase_label)),
        ("branch", str(sol.branch)),
        ("mu", sol.mu),
        ("x", sol.x),
        ("rho", sol.rho),
        ("alpha_plus", sol.alpha_plus),
        ("alpha_minus", sol.alpha_minus),
        ("alpha_b", sol.alpha_b),
        ("P", sol.pressure),
        ("S", state.entropy_density),
    ]
    for key, value in fields:
        print(f"{key}={_fmt(value)}", file=out)
    if args.out:
        payload = {
            "params": {k: _json_value(v) for k, v in params.as_dict().items()},
            "state": {k: _json_value(v) for k, v in fields},
            "thermal_density": state.thermal_density,
            "free_energy_density": state.free_energy_density,
        }
        _dump_json(args.out, payload)
    return 0


def cmd_sweep(args, out):
    params = _params(args)
    if not args.mu_min < args.mu_max:
        raise ConfigError("need --mu-min < --mu-max")
    if args.steps < 2:
        raise ConfigError("need --steps >= 2")
    grid = np.linspace(args.mu_min, args.mu_max, args.steps)
    result = sweep_mu(params, grid)
    write_sweep_csv(args.out, result)
    crit, transitions = transition_report(params)
    print(f"wrote {len(result.candidates)} rows ({len(result.rows)} equilibrium) to {args.out}",
          file=out)
    print(f"regime={crit.regime} intermediate_phase_present={crit.intermediate_phase_present}",
          file=out)
    for t in transitions:
        if not args.mu_min <= t.mu <= args.mu_max:
            continue
        print(f"transition mu={_fmt(t.mu)} {t.phase_left} -> {t.phase_right} "
              f"order={t.order} density_jump={_fmt(t.density_jump)}", file=out)
    return 0


def cmd_critical(args, out):
    params = _params(args)
    eps_list = args.epsilon_list if args.epsilon_list else [params.epsilon]
    sets = phase_boundary_map(params, eps_list)
    cols = ("epsilon", "x0", "mu0", "mu1", "mu2", "mu_c1", "mu_c2",
            "intermediate_phase_present", "regime")
    print(" ".join(cols), file=out)
    for c in sets:
        d = c.as_dict()
        print(" ".join(_fmt(d[k]) for k in cols), file=out)
    if args.out:
        write_critical_json(args.out, params, sets)
    return 0


def cmd_oracle(args, out):
    params = _params(args)
    if (args.nmax is None) != (args.mmax is None):
        raise ConfigError("give both --nmax and --mmax, or neither")
    rows = convergence_table(params, args.mu, args.volumes, args.nmax, args.mmax)
    cols = ("volume", "n_max", "m_max", "pressure", "variational", "gap", "cut_ratio")
    print(" ".join(cols), file=out)
    for r in rows:
        print(" ".join(_fmt(getattr(r, k)) for k in cols), file=out)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(cols)
            for r in rows:
                writer.writerow([format_float(v) if isinstance(v, float) else str(v)
                                 for v in (getattr(r, k) for k in cols)])
    return 0


def _add_common(p):
    p.add_argument("--config", help="flat key = value parameter file")
    p.add_argument("--out", help="output file")
    grp = p.add_argument_group("parameter overrides")
    for key in CONFIG_KEYS:
        grp.add_argument(f"--{key.replace('_', '-')}", dest="p_" + key, metavar="V")


def build_parser():
    parser = _Parser(prog="dickebec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="equilibrium state at one chemical potential")
    _add_common(p)
    p.add_argument("--mu", type=float, required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="all stationary points on a uniform mu-grid")
    _add_common(p)
    p.add_argument("--mu-min", type=float, required=True)
    p.add_argument("--mu-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=201)
    p.set_defaults(func=cmd_sweep, out_default="sweep.csv")

    p = sub.add_parser("critical", help="critical potentials for a list of splittings")
    _add_common(p)
    p.add_argument("--epsilon-list", type=_float_list)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("oracle", help="finite-volume pressure against the variational one")
    _add_common(p)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--volumes", type=_float_list, default=[4.0, 8.0, 16.0, 32.0, 64.0])
    p.add_argument("--nmax", type=int)
    p.add_argument("--mmax", type=int)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.out is None and getattr(args, "out_default", None):
        args.out = args.out_default
    try:
        return args.func(args, out)
    except StabilityViolation as exc:
        print(f"dickebec: {exc}\ndickebec: {STABILITY_HINT}", file=sys.stderr)
        return 2
    except (ConfigError, DickeBECError, ValueError) as exc:
        print(f"dickebec: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
