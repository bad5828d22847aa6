"""Compiled kernels against the pure-Python twin.

    python benchmarks/bench_kernels.py [--repeat 5]

Kernel timings call both modules side by side in one process. The
end-to-end timing runs ``critical_set`` in a subprocess per backend, since
the backend is fixed at import.
"""

import argparse
import math
import os
import subprocess
import sys
import timeit

import numpy as np

from dickebec import _kernels_py as py
from dickebec.special_functions import SERIES_SWITCH, _order_plan

try:
    from dickebec import _kernels as ext
except ImportError:
    ext = None

END_TO_END = """
import time
from dickebec import ModelParams, critical_set, landmarks
t0 = time.perf_counter()
for i in range(40):
    p = ModelParams(beta=1.0, lam=1.0, omega=1.0, g=1.0 + 0.04 * i, epsilon=0.01)
    critical_set(p)
print(time.perf_counter() - t0)
"""


def _args(s, module):
    plan = _order_plan(s)
    return (plan.s, module.prepare_coeffs(plan.coeffs), plan.sing_amp, plan.sing_pow,
            plan.sing_h, plan.has_log)


def _li_loop(module, ts, args):
    f = module.li_neg_log
    for t in ts:
        f(t, 1e-12, SERIES_SWITCH, *args)


def _bisect_loop(module, targets, args):
    amp = 2 * (2 * math.pi) ** -1.5
    for c in targets:
        module.bisect_affine_li(amp, 1.0, -1.0, c - 0.5, 0.0, 10.0, True, 2000,
                                1e-12, SERIES_SWITCH, *args)


def _time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def _end_to_end(flag, repeat):
    env = dict(os.environ, DICKEBEC_PURE_PYTHON=flag)
    runs = [float(subprocess.run([sys.executable, "-c", END_TO_END], env=env, check=True,
                                 capture_output=True, text=True).stdout)
            for _ in range(repeat)]
    return min(runs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if ext is None:
        print("compiled kernels not built; nothing to compare")
        return 1

    ts = np.geomspace(1e-8, 40.0, 4000).tolist()
    targets = np.linspace(0.01, 2.0, 200).tolist()
    cases = [
        ("li_neg_log s=1.5 x4000", lambda m: _li_loop(m, ts, _args(1.5, m))),
        ("li_neg_log s=2.5 x4000", lambda m: _li_loop(m, ts, _args(2.5, m))),
        ("bisect_affine_li x200", lambda m: _bisect_loop(m, targets, _args(1.5, m))),
    ]
    print(f"{'case':<28}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, fn in cases:
        t_py = _time(lambda: fn(py), args.repeat)
        t_ext = _time(lambda: fn(ext), args.repeat)
        print(f"{name:<28}{t_py:>12.4f}{t_ext:>12.4f}{t_py / t_ext:>10.1f}")
    t_py = _end_to_end("1", args.repeat)
    t_ext = _end_to_end("0", args.repeat)
    print(f"{'critical_set x40':<28}{t_py:>12.4f}{t_ext:>12.4f}{t_py / t_ext:>10.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
