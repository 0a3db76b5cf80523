#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python twins.

Runs each hot kernel on representative workloads and prints a table
with per-call times and the speedup.  Outputs of the two backends are
asserted equal before timing, so the comparison is apples to apples.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import gammaseq._kernels_py as pure

try:
    import gammaseq._kernels as compiled
except ImportError:
    compiled = None

CASES = [
    ("harmonic_fixed(10^4, q=170)", "harmonic_fixed", (10**4, 170), 20),
    ("harmonic_fixed(10^5, q=200)", "harmonic_fixed", (10**5, 200), 3),
    ("harmonic_fixed(10^6, q=256)", "harmonic_fixed", (10**6, 256), 1),
    ("atanh_fixed(1, 3, q=128)   ", "atanh_fixed", (1, 3, 128), 2000),
    ("atanh_fixed(1, 3, q=256)   ", "atanh_fixed", (1, 3, 256), 1000),
    ("atanh_fixed(1, 3, q=1024)  ", "atanh_fixed", (1, 3, 1024), 200),
    ("atanh_fixed(4999,10001,256)", "atanh_fixed", (4999, 10001, 256), 1000),
    ("ln2_fixed(q=512)           ", "ln2_fixed", (512,), 400),
    ("gamma_series_fixed(92,500) ", "gamma_series_fixed", (92, 500), 100),
    ("gamma_series_fixed(137,700)", "gamma_series_fixed", (137, 700), 50),
]


def time_call(fn, args, number):
    return timeit.timeit(lambda: fn(*args), number=number) / number


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3,
                        help="keep the best of this many timing rounds")
    opts = parser.parse_args()

    if compiled is None:
        print("compiled extension not available; timing pure backend only")
    header = f"{'kernel':<30} {'pure':>12} {'compiled':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, name, args, number in CASES:
        fn_pure = getattr(pure, name)
        best_pure = min(
            time_call(fn_pure, args, number) for _ in range(opts.repeat)
        )
        if compiled is not None:
            fn_comp = getattr(compiled, name)
            assert fn_pure(*args) == fn_comp(*args), f"backend mismatch in {name}"
            best_comp = min(
                time_call(fn_comp, args, number) for _ in range(opts.repeat)
            )
            print(f"{label:<30} {best_pure * 1e6:>10.1f}us "
                  f"{best_comp * 1e6:>10.1f}us {best_pure / best_comp:>7.2f}x")
        else:
            print(f"{label:<30} {best_pure * 1e6:>10.1f}us {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
