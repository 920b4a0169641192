#!/usr/bin/env python3
"""Tabulate computed eigenvalues against the asymptotic law.

Usage: python scripts/spectrum_benchmark.py [alpha] [n_max]
"""

import sys
import time

from wkbspec import real_spectrum, t_asymptotic


def main() -> int:
    alpha = float(sys.argv[1]) if len(sys.argv) > 1 else 2.0 / 3.0
    n_max = int(sys.argv[2]) if len(sys.argv) > 2 else 12
    t0 = time.perf_counter()
    ts = real_spectrum(alpha, n_max)
    elapsed = time.perf_counter() - t0
    print(f"alpha = {alpha}, n_max = {n_max}, computed in {elapsed:.2f} s")
    print(f"{'n':>3s} {'t_n':>18s} {'asymptotic':>18s} {'deviation':>12s}")
    for n, t in enumerate(ts, start=1):
        asym = t_asymptotic(n, alpha)
        print(f"{n:3d} {t:18.12f} {asym:18.12f} {abs(t / asym - 1.0):12.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
