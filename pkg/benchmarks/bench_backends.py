#!/usr/bin/env python3
"""Benchmark: compiled summation kernels vs the numpy fallback.

Times the two hot kernels (power series and large-argument expansion) on
operator-realistic argument arrays, plus one end-to-end derivative call.

Usage: python benchmarks/bench_backends.py [--n 4096] [--repeats 5]
"""

import argparse
import time

import numpy as np

from mlfrac import _engine, _mlkernel_py
from mlfrac import _backend, ab_core
from mlfrac.ab_core import AlphaParam, SampledFunction, abc_derivative

try:
    from mlfrac import _mlkernel as _compiled
except ImportError:
    _compiled = None


def _best_of(repeats, fn):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(n, repeats):
    alpha, beta = 0.5, 2.0
    rg0h, rg0l, rat_h, rat_l = _engine._series_table(alpha, beta)
    rg2, env = _engine._asym_table(alpha, beta)
    s = np.linspace(0.0, 1.0, n)
    z_short = -np.power(s, alpha)                     # unit-interval moments
    z_mixed = -np.power(np.linspace(0.0, 33.0, n), alpha)  # long-range moments
    z_asym = -np.linspace(8.0, 50.0, n)               # deep arguments
    rows = []
    backends = [("numpy", _mlkernel_py)]
    if _compiled is not None:
        backends.insert(0, ("compiled", _compiled))
    for name, mod in backends:
        t_short = _best_of(repeats, lambda: mod.series_sum(
            z_short, rat_h, rat_l, rg0h, rg0l, 1e-12))
        t_mixed = _best_of(repeats, lambda: mod.series_sum(
            z_mixed, rat_h, rat_l, rg0h, rg0l, 1e-12))
        t_asym = _best_of(repeats, lambda: mod.asymp_sum(z_asym, rg2, env, alpha, 1e-12))
        rows.append((name, t_short, t_mixed, t_asym))
    return rows


def bench_operator(n, repeats):
    f = SampledFunction.from_callable(np.sin, 0.0, 1.0, n, deriv=np.cos)
    p = AlphaParam(0.5)
    rows = []
    mods = [("numpy", _mlkernel_py)]
    if _compiled is not None:
        mods.insert(0, ("compiled", _compiled))
    saved = (_backend.series_sum, _backend.asymp_sum)
    try:
        for name, mod in mods:
            _backend.series_sum = mod.series_sum
            _backend.asymp_sum = mod.asymp_sum

            def call():
                _engine._series_tables.clear()
                _engine._asym_tables.clear()
                ab_core._table_cache.clear()
                abc_derivative(f, p)

            rows.append((name, _best_of(repeats, call)))
    finally:
        _backend.series_sum, _backend.asymp_sum = saved
        _engine._series_tables.clear()
        _engine._asym_tables.clear()
        ab_core._table_cache.clear()
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4096)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    if _compiled is None:
        print("compiled extension not built; timing the numpy backend only\n")

    print(f"kernel timings, {args.n} evaluation points (best of {args.repeats}):")
    rows = bench_kernels(args.n, args.repeats)
    for name, ts, tm, ta in rows:
        print(f"  {name:9s} series(short) {1e3*ts:8.2f} ms   series(long) "
              f"{1e3*tm:8.2f} ms   asymptotic {1e3*ta:8.2f} ms")
    if len(rows) == 2:
        print(f"  speedup   series(short) {rows[1][1]/rows[0][1]:8.2f} x    series(long) "
              f"{rows[1][2]/rows[0][2]:8.2f} x    asymptotic {rows[1][3]/rows[0][3]:8.2f} x")

    print(f"\nend-to-end derivative, n = {args.n} (cold coefficient tables):")
    rows = bench_operator(args.n, args.repeats)
    for name, t in rows:
        print(f"  {name:9s} {1e3*t:8.2f} ms")
    if len(rows) == 2:
        print(f"  speedup   {rows[1][1]/rows[0][1]:8.2f} x")


if __name__ == "__main__":
    main()
