#!/usr/bin/env python3
"""Benchmark the compiled row-reduction kernel against the Python twin.

Times gf_rref (prime field) and int_rref (fraction-free integer) on
random matrices, then times a batch of full classifications under each
backend.  Run from the repository root:

    python3 benchmarks/bench_kernels.py [--size 40] [--reps 200]
"""

import argparse
import random
import time

from nil7._kern import c_gf_rref, c_int_rref, py_gf_rref, py_int_rref


def _rand_rows(rng, m, n, lo, hi):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def bench_rref(label, fn, mats, extra=()):
    t0 = time.perf_counter()
    for rows in mats:
        fn([r[:] for r in rows], *extra)
    dt = time.perf_counter() - t0
    print("  %-18s %8.1f ms" % (label, dt * 1e3))
    return dt


def bench_classify(reps, seed):
    from nil7.classify import classify
    from nil7.fields import Rationals
    from nil7.liealg import random_presentation

    field = Rationals()
    sigs = [(6, 1), (5, 2), (4, 3)]
    algs = [
        random_presentation(*sigs[i % 3], seed=seed + i, field=field)
        for i in range(reps)
    ]
    t0 = time.perf_counter()
    for alg in algs:
        classify(alg, with_certificate=False)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=40, help="matrix size")
    ap.add_argument("--reps", type=int, default=200, help="matrices per timing")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if c_int_rref is None:
        print("compiled kernel not available; nothing to compare")
        return

    rng = random.Random(args.seed)
    n = args.size
    int_mats = [_rand_rows(rng, n, n, -50, 50) for _ in range(args.reps)]
    p = 10007
    gf_mats = [_rand_rows(rng, n, n, 0, p - 1) for _ in range(args.reps)]

    print("int_rref, %d x %d, %d matrices:" % (n, n, args.reps))
    t_py = bench_rref("python", py_int_rref, int_mats)
    t_c = bench_rref("compiled", c_int_rref, int_mats)
    print("  speedup            %7.1fx" % (t_py / t_c))

    print("gf_rref mod %d, %d x %d, %d matrices:" % (p, n, n, args.reps))
    t_py = bench_rref("python", py_gf_rref, gf_mats, (p,))
    t_c = bench_rref("compiled", c_gf_rref, gf_mats, (p,))
    print("  speedup            %7.1fx" % (t_py / t_c))

    # end-to-end classification uses whichever backend was selected at
    # import time; report it for context
    from nil7._kern import BACKEND

    reps = max(20, args.reps // 4)
    dt = bench_classify(reps, args.seed)
    print("classify over Q, %d random presentations (%s backend): %.1f ms"
          % (reps, BACKEND, dt * 1e3))


if __name__ == "__main__":
    main()
