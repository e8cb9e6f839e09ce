#!/usr/bin/env python3
"""Sweep the exponential family c^(-|i-j|) and watch the process bound.

Two regimes:
  * fixed rational c: exact bound vs exact permanent for small n;
  * c = sqrt(n) in float mode: the bound approaches e from above as n
    grows (it never dips below e), while the row-sum baseline explodes.

Usage: python scripts/exp_family_sweep.py [--max-n 10] [--large 16 64 256 1024]
"""

import argparse
import math
from fractions import Fraction

from permbound import exp_family, permanent_ryser, process_bound, rowsum_bound, run_process


def fixed_c_table(max_n: int):
    for c in (Fraction(2), Fraction(5, 2), Fraction(3)):
        print(f"\nc = {c} (exact)")
        print(f"{'n':>3} {'process bound':>16} {'per(A)':>16} {'ratio':>10}")
        for n in range(1, max_n + 1):
            a = exp_family(n, c)
            bound = process_bound(a)
            if n <= 12:
                exact = permanent_ryser(a)
                ratio = float(bound / exact)
                print(f"{n:>3} {float(bound):>16.8f} {float(exact):>16.8f} {ratio:>10.5f}")
            else:
                print(f"{n:>3} {float(bound):>16.8f} {'-':>16} {'-':>10}")


def sqrt_n_table(sizes):
    print("\nc = sqrt(n) (float mode)")
    print(f"{'n':>5} {'process bound':>16} {'bound - e':>12} {'rowsum bound':>14}")
    for n in sizes:
        a = exp_family(n, math.sqrt(n))
        trace = run_process(a)
        print(
            f"{n:>5} {trace.bound:>16.10f} {trace.bound - math.e:>12.2e} "
            f"{rowsum_bound(a):>14.4e}"
        )
    print(f"{'e':>5} {math.e:>16.10f}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=10)
    parser.add_argument("--large", type=int, nargs="+", default=[16, 64, 256, 1024])
    args = parser.parse_args()
    fixed_c_table(args.max_n)
    sqrt_n_table(args.large)


if __name__ == "__main__":
    main()
