"""Compare the compiled kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``.  Each workload runs on both
backends and the results are checked for equality before timings are shown.
"""

import argparse
import random
import timeit
from fractions import Fraction

from singfrob import _kernels_py

try:
    from singfrob import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def random_terms(rng, nvars, nterms, degree):
    out = {}
    while len(out) < nterms:
        e = tuple(rng.randint(0, degree) for _ in range(nvars))
        out[e] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5))
    return out


def random_matrix(rng, n, m):
    return [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(m)] for _ in range(n)]


def workloads(rng):
    a = random_terms(rng, 4, 60, 6)
    b = random_terms(rng, 4, 60, 6)
    M = random_matrix(rng, 24, 30)
    return {
        "mul_terms 60x60 (4 vars)": lambda k: k.mul_terms(a, b),
        "add_scaled_terms 60+60": lambda k: k.add_scaled_terms(a, b, Fraction(-3, 7)),
        "shift_scale_terms 60": lambda k: k.shift_scale_terms(a, (1, 0, 2, 1), Fraction(5, 3)),
        "rref 24x30": lambda k: k.rref([list(r) for r in M], 30),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels_c is None:
        print("compiled kernels not built; only the pure-Python timings are shown")
    rng = random.Random(args.seed)
    print(f"{'workload':30s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn in workloads(rng).items():
        if _kernels_c is not None and fn(_kernels_py) != fn(_kernels_c):
            raise SystemExit(f"backends disagree on {name}")
        py = min(timeit.repeat(lambda: fn(_kernels_py), repeat=args.repeat, number=args.number)) / args.number
        if _kernels_c is None:
            print(f"{name:30s} {py * 1e3:10.3f} {'-':>10s} {'-':>8s}")
            continue
        cy = min(timeit.repeat(lambda: fn(_kernels_c), repeat=args.repeat, number=args.number)) / args.number
        print(f"{name:30s} {py * 1e3:10.3f} {cy * 1e3:10.3f} {py / cy:7.2f}x")


if __name__ == "__main__":
    main()
