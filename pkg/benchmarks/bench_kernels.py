"""Compare the numba and numpy backends of the hot kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Kernel timings call both implementations directly.  The end-to-end timing runs a
Groebner basis in a subprocess per backend (GFORGE_NUMBA=0 or 1), so import-time
dispatch is exercised exactly as users see it.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from gforge import _kernels as K

E2E = """
import time
from gforge import Ideal, PolyRing, PrimeField
from gforge._kernels import backend
R = PolyRing(PrimeField(2), ["x1", "x2", "x3", "x4", "x5", "x6", "s", "t", "u", "v"])
x1, x2, x3, x4, x5, x6, s, t, u, v = R.gens
I = Ideal(R, [x1 - s*u**20, x2 - s*u**30, x3 - s*t**20*v, x4 - t*v**20, x5 - s*t*u*v, x6 - s*t**2*u])
t0 = time.perf_counter()
n = len(I.gbasis())
print(backend(), n, round(time.perf_counter() - t0, 3))
"""


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_rref(repeat):
    rng = np.random.default_rng(0)
    p = 32003
    print("rref_modp (seconds, best of %d)" % repeat)
    print(f"{'shape':>12} {'numpy':>10} {'numba':>10}")
    for n in (50, 100, 200, 400):
        A = rng.integers(0, p, size=(n, n + 10))
        a = best(lambda: K.rref_modp_numpy(A, p), repeat)
        b = best(lambda: K.rref_modp_numba(A, p), repeat) if K.HAVE_NUMBA else float("nan")
        print(f"{f'{n}x{n + 10}':>12} {a:10.4f} {b:10.4f}")


def bench_divisor(repeat):
    rng = np.random.default_rng(1)
    print("first_divisor, 1000 queries (seconds, best of %d)" % repeat)
    print(f"{'basis size':>12} {'numpy':>10} {'numba':>10}")
    for m in (50, 500, 5000):
        lpps = rng.integers(0, 6, size=(m, 10)).astype(np.int64)
        alive = rng.random(m) < 0.8
        queries = rng.integers(0, 8, size=(1000, 10)).astype(np.int64)

        def run(fn):
            for q in queries:
                fn(lpps, alive, q)

        a = best(lambda: run(K.first_divisor_numpy), repeat)
        b = best(lambda: run(K.first_divisor_numba), repeat) if K.HAVE_NUMBA else float("nan")
        print(f"{m:>12} {a:10.4f} {b:10.4f}")


def bench_end_to_end():
    print("Groebner basis of a 10-variable binomial ideal over ZZ/(2) (backend, size, seconds)")
    for flag in ("0", "1"):
        env = dict(os.environ, GFORGE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", E2E], env=env, capture_output=True, text=True)
        print("  " + (res.stdout.strip() or res.stderr.strip().splitlines()[-1]))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args()
    if K.HAVE_NUMBA:
        # compile before timing
        K.rref_modp_numba(np.eye(2, dtype=np.int64), 7)
        K.first_divisor_numba(np.zeros((1, 1), np.int64), np.ones(1, bool), np.zeros(1, np.int64))
    else:
        print("numba is not installed; only the numpy column is meaningful")
    bench_rref(args.repeat)
    print()
    bench_divisor(args.repeat)
    if not args.skip_e2e:
        print()
        bench_end_to_end()


if __name__ == "__main__":
    main()
