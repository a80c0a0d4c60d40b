"""Compare the compiled and pure-Python kernel backends.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Each kernel runs on the same seeded inputs under both backends; results are
checked for equality before timings are reported.  ``--end-to-end`` also
times the degree-2 Hessian of the Fermat cubic in a fresh interpreter per
backend.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from mhessian import _pykernels

try:
    from mhessian import _kernels
except ImportError:
    _kernels = None

P = (1 << 31) - 1


def workloads(rng):
    det_small = [[rng.randint(-9, 9) for _ in range(40)] for _ in range(40)]
    det_mod = [[rng.randrange(P) for _ in range(120)] for _ in range(120)]
    wide = [[rng.randint(-3, 3) for _ in range(200)] for _ in range(150)]
    poly_a = {(i, j, k): rng.randint(-5, 5) or 1
              for i in range(6) for j in range(6) for k in range(6) if i + j + k <= 8}
    poly_b = {(i, j, k): rng.randint(-5, 5) or 1
              for i in range(5) for j in range(5) for k in range(5) if i + j + k <= 6}
    return [
        ("det_integer 40x40", "det_integer", (det_small,)),
        ("det_mod_p 120x120", "det_mod_p", (det_mod, P)),
        ("rank_profile_mod_p 150x200", "rank_profile_mod_p", (wide, 200, P)),
        ("poly_mul 3 vars", "poly_mul", (poly_a, poly_b)),
    ]


def bench(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def end_to_end():
    script = ("import time; from mhessian import BACKEND, hessian_div, plane_curve, parse_poly; "
              "t = time.perf_counter(); "
              "hessian_div(plane_curve(parse_poly('x0^3 + x1^3 + x2^3'), 2), 2); "
              "print(BACKEND, time.perf_counter() - t)")
    for pure in ("0", "1"):
        env = dict(os.environ, MHESSIAN_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", script], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print(f"{'hessian_div m=2 (' + out[0] + ')':32s} {float(out[1]):10.3f} s")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; nothing to compare")
        return 1
    print(f"{'kernel':32s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, name, inputs in workloads(random.Random(args.seed)):
        py, cy = getattr(_pykernels, name), getattr(_kernels, name)
        if py(*inputs) != cy(*inputs):
            print(f"{label}: backends disagree")
            return 1
        tp = bench(py, inputs, args.repeat)
        tc = bench(cy, inputs, args.repeat)
        print(f"{label:32s} {tp:9.4f}s {tc:9.4f}s {tp / tc:7.1f}x")
    if args.end_to_end:
        end_to_end()
    return 0


if __name__ == "__main__":
    sys.exit(main())
