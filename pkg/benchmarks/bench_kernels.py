"""Compare the compiled kernels with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--n 4096] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from surfineq import kernels
from surfineq._ext import fallback
from surfineq.families import random_lipschitz, sphere
from surfineq.axisym import validate_generating_curve
from surfineq.rearrange import convex_polygon, first_rearrangement, second_rearrangement


def cases(n: int):
    g = random_lipschitz(0, n=n)
    star = validate_generating_curve(second_rearrangement(first_rearrangement(g.angle)))
    vx, vz = convex_polygon(star)
    cz = 0.5 * (vz.max() + vz.min())
    s = sphere(n=n)
    yield "reflected_diameter", (np.ascontiguousarray(s.x), np.ascontiguousarray(s.z))
    yield "convex_margin", (np.ascontiguousarray(vx), np.ascontiguousarray(vz), 0.0, float(cz),
                            np.ascontiguousarray(g.x), np.ascontiguousarray(g.z))


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=4096)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    if kernels.BACKEND != "cython":
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':<20}{'fallback [ms]':>15}{'compiled [ms]':>15}{'speedup':>10}{'max diff':>12}")
    for name, inputs in cases(args.n):
        slow = getattr(fallback, name)
        fast = getattr(kernels, name)
        t_slow = min(timeit.repeat(lambda: slow(*inputs), number=1, repeat=args.repeat))
        t_fast = min(timeit.repeat(lambda: fast(*inputs), number=1, repeat=args.repeat))
        a, b = np.asarray(slow(*inputs), dtype=float), np.asarray(fast(*inputs), dtype=float)
        diff = float(np.max(np.abs(a - b)))
        print(f"{name:<20}{1e3 * t_slow:>15.3f}{1e3 * t_fast:>15.3f}{t_slow / t_fast:>10.1f}{diff:>12.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
