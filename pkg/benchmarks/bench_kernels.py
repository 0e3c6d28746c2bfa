#!/usr/bin/env python3
"""Benchmark the numba-jitted sweep kernels against the pure-numpy
fallback.

Builds the multiplicative-function tables, derives the per-weight
dimension tables, and runs both trichotomy sweeps on each path, timing
every stage and asserting the outputs are identical.

Usage: python benchmarks/bench_kernels.py [--limit N] [--repeats R]
"""

import argparse
import time

import numpy as np

from dimfactor import kernels
from dimfactor.sweeps import primality_sweep, trichotomy_sweep


def _time(fn, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_path(force, limit, repeats):
    t_tables, tables = _time(lambda: kernels.build_star_tables(limit, force=force), repeats)
    t_dims, dims = _time(
        lambda: [kernels.dimension_tables(k, tables, force=force) for k in (2, 4, 6, 12)],
        repeats,
    )
    t_sq, rep_sq = _time(lambda: trichotomy_sweep(2, limit, (2, 4, 6, 12), tables), 1)
    t_pr, rep_pr = _time(lambda: primality_sweep(2, limit, (2, 4, 6, 12), tables), 1)
    assert not rep_sq.violations and not rep_pr.violations
    return {"tables": t_tables, "dims": t_dims, "sweeps": t_sq + t_pr}, tables, dims


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=int, default=1_000_000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    print(f"level limit {args.limit}, best of {args.repeats}")
    rows = {}
    tables_by_path = {}
    for force in ("numba", "numpy"):
        if force == "numba" and not kernels.HAVE_NUMBA:
            print("numba unavailable, skipping jitted path")
            continue
        if force == "numba":
            kernels.build_star_tables(1000, force="numba")  # compile outside timing
        rows[force], tables, dims = bench_path(force, args.limit, args.repeats)
        tables_by_path[force] = (tables, dims)

    if len(tables_by_path) == 2:
        a, da = tables_by_path["numba"]
        b, db = tables_by_path["numpy"]
        for name in ("spf", "ns0", "nu_inf", "nu2", "nu3", "mu"):
            assert np.array_equal(getattr(a, name), getattr(b, name)), name
        for x, y in zip(da, db):
            assert np.array_equal(x.B12, y.B12)
        print("outputs identical on both paths")

    header = f"{'stage':<10}" + "".join(f"{p:>12}" for p in rows)
    print(header)
    for stage in ("tables", "dims", "sweeps"):
        line = f"{stage:<10}"
        for p in rows:
            line += f"{rows[p][stage]:>11.3f}s"
        print(line)
    if len(rows) == 2:
        for stage in ("tables", "dims", "sweeps"):
            ratio = rows["numpy"][stage] / rows["numba"][stage]
            print(f"{stage}: numba is {ratio:.1f}x vs numpy")


if __name__ == "__main__":
    main()
