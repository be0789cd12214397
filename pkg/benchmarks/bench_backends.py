#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure numpy/Python fallbacks.

Runs each hot kernel on identical inputs under both backends, checks the
outputs agree bit for bit, and prints a timing table.

    python3 benchmarks/bench_backends.py --limit 200000 --poly x^2+1
"""

import argparse
import time

import numpy as np

from weylsum import _kernels_numba, _kernels_numpy
from weylsum.congruence import parse_poly


def _time(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--limit", type=int, default=200_000)
    ap.add_argument("--poly", default="x^2+1")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    limit = args.limit
    poly = parse_poly(args.poly)
    coeffs = np.asarray(poly.coeffs, dtype=np.int64)

    # warm the JIT before timing
    _kernels_numba.linear_sieve(1000)

    rows = []

    t_nb, (spf, primes) = _time(_kernels_numba.linear_sieve, limit, repeat=args.repeat)
    t_np, (spf2, primes2) = _time(_kernels_numpy.linear_sieve, limit, repeat=args.repeat)
    assert np.array_equal(spf, spf2) and np.array_equal(primes, primes2)
    rows.append(("linear_sieve", t_nb, t_np))

    # Liouville on prime powers: (-1)^k
    ppval = np.zeros(limit + 1, np.complex128)
    for p in primes:
        p = int(p)
        q, v = p, -1.0
        while q <= limit:
            ppval[q] = v
            q *= p
            v = -v

    _kernels_numba.multiplicative_values(spf, ppval, 1000)
    t_nb, v1 = _time(_kernels_numba.multiplicative_values, spf, ppval, limit,
                     repeat=args.repeat)
    t_np, v2 = _time(_kernels_numpy.multiplicative_values, spf, ppval, limit,
                     repeat=args.repeat)
    assert np.array_equal(v1, v2)
    rows.append(("multiplicative_values", t_nb, t_np))

    scan_primes = primes[primes > poly.degree + 2]
    _kernels_numba.roots_mod_primes(scan_primes[:100], coeffs)
    t_nb, (c1, f1) = _time(_kernels_numba.roots_mod_primes, scan_primes, coeffs,
                           repeat=args.repeat)
    t_np, (c2, f2) = _time(
        _kernels_numpy.roots_mod_primes, scan_primes, [int(c) for c in poly.coeffs],
        repeat=args.repeat,
    )
    assert np.array_equal(c1, c2) and np.array_equal(f1, f2)
    rows.append(("roots_mod_primes", t_nb, t_np))

    print(f"limit = {limit}, poly = {args.poly}")
    print(f"{'kernel':<24}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for name, t_nb, t_np in rows:
        print(f"{name:<24}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>10.1f}x")


if __name__ == "__main__":
    main()
