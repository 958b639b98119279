"""Compiled against numpy theta kernels on the period matrix of a corpus curve.

Usage: python3 benchmarks/bench_kernels.py [--points N] [--repeat R]

Both kernels get the same offsets and arguments; the script checks that
they agree before timing them.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from trigal import _theta_py
from trigal.curve import CurveSpec
from trigal.periods import trigonal_period_data
from trigal.sigma import build_sigma
from trigal.theta import ThetaFunction

try:
    from trigal import _theta_kernel
except ImportError:  # extension not built
    _theta_kernel = None


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _theta_kernel is None:
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
        return 1

    pd = trigonal_period_data(CurveSpec.from_branch_points((0, 1, 1 + 1j, 3 - 1j)))
    ctx = build_sigma(pd)
    rng = np.random.default_rng(args.seed)
    u = np.array([pd.from_coords(rng.uniform(-0.5, 0.5, 6)) for _ in range(args.points)])
    z = u @ ctx.A.T

    kernels = {
        "python": ThetaFunction(ctx.theta.tau, ctx.char, ctx.theta.radius, backend=_theta_py.theta_sums),
        "compiled": ThetaFunction(ctx.theta.tau, ctx.char, ctx.theta.radius,
                                  backend=_theta_kernel.theta_sums),
    }
    print(f"{len(kernels['python'].offsets)} lattice terms, {args.points} points")
    print(f"{'order':>5} {'python [s]':>11} {'compiled [s]':>13} {'speed-up':>9} {'max rel diff':>13}")
    for order in (0, 1, 2):
        out = {k: th.sums(z, order) for k, th in kernels.items()}
        diff = 0.0
        for a, b in zip(out["python"], out["compiled"]):
            if a is None:
                continue
            diff = max(diff, float(np.max(np.abs(a - b)) / max(np.max(np.abs(a)), 1e-300)))
        t = {k: best_of(lambda th=th: th.sums(z, order), args.repeat) for k, th in kernels.items()}
        print(f"{order:>5} {t['python']:>11.4f} {t['compiled']:>13.4f} "
              f"{t['python'] / t['compiled']:>9.2f} {diff:>13.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
