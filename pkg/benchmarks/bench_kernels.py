"""Time the compiled kernels against the pure-numpy fallback.

Runs each scan on a seeded random permutation of GF(2^n), checks that both
backends return identical results, and reports the median wall time of each
along with the speedup.  The boomerang scan gets its own (smaller) default
degree because the fallback pays for its quadratic row sweep.

Usage: python benchmarks/bench_kernels.py [--n 10] [--bct-n 8] [--repeats 3]
"""

import argparse
import statistics
import time

import numpy as np

from dlct import FieldSpec
from dlct._kernels import backend_module


def _median_time(fn, repeats: int) -> tuple[float, object]:
    times = []
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times), result


def _cases(n: int, bct_n: int, seed: int):
    spec = FieldSpec(n)
    rng = np.random.default_rng(seed)
    table = rng.permutation(spec.order).astype(np.int64)
    hist_dlct = lambda: np.zeros(spec.order + 1, dtype=np.int64)  # noqa: E731
    hist_walsh = lambda: np.zeros(2 * spec.order + 1, dtype=np.int64)  # noqa: E731

    small = FieldSpec(bct_n)
    small_table = rng.permutation(small.order).astype(np.int64)
    small_inv = np.empty_like(small_table)
    small_inv[small_table] = np.arange(small.order, dtype=np.int64)

    return [
        ("dlct_scan", n,
         lambda mod: mod.dlct_scan(table, 1, spec.order, hist_dlct())),
        ("ddt_scan", n,
         lambda mod: mod.ddt_scan(table, 1, spec.order, hist_dlct())),
        ("walsh_scan", n,
         lambda mod: mod.walsh_scan(table, spec.exp_table, spec.log_table,
                                    spec.trace_bits, 1, spec.order,
                                    hist_walsh())),
        ("bct_scan", bct_n,
         lambda mod: mod.bct_scan(small_table, small_inv, 1, small.order)),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=10,
                        help="field degree for the row scans (default 10)")
    parser.add_argument("--bct-n", type=int, default=8,
                        help="field degree for the boomerang scan (default 8)")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    fallback = backend_module("fallback")
    try:
        compiled = backend_module("compiled")
    except ImportError:
        compiled = None
        print("compiled extension not built; timing the fallback only\n")

    header = f"{'kernel':<12} {'n':>3} {'fallback':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, degree, call in _cases(args.n, args.bct_n, args.seed):
        t_fb, r_fb = _median_time(lambda: call(fallback), args.repeats)
        if compiled is None:
            print(f"{name:<12} {degree:>3} {t_fb:>11.4f}s {'-':>12} {'-':>9}")
            continue
        t_c, r_c = _median_time(lambda: call(compiled), args.repeats)
        if r_fb != r_c:
            print(f"{name:<12} {degree:>3} BACKEND MISMATCH: {r_fb} != {r_c}")
            return 1
        print(f"{name:<12} {degree:>3} {t_fb:>11.4f}s {t_c:>11.4f}s {t_fb / t_c:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
