#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Runs every kernel on a few representative rings, checks that both
backends return identical results, and prints per-kernel timings.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from nilclean import matrix_ring, upper_triangular, zn
from nilclean.classify import units_array
from nilclean.kernels import available_backends, get_backend


def time_call(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_ring(ring, repeat):
    backends = {name: get_backend(name) for name in available_backends()}
    units = units_array(ring)
    cases = [
        ("axiom_scan", (ring.add_table, ring.mul_table, ring.neg_table,
                        ring.zero, ring.one)),
        ("nil_indices", (ring.mul_table, ring.zero)),
        ("units_mask", (ring.mul_table, ring.one)),
        ("center_mask", (ring.mul_table,)),
        ("jacobson_mask", (ring.add_table, ring.mul_table, ring.neg_table,
                           ring.one, units)),
    ]
    print(f"\n{ring.label} (size {ring.size})")
    print(f"  {'kernel':14} " + " ".join(f"{n:>12}" for n in backends) +
          ("      speedup" if len(backends) > 1 else ""))
    for name, args in cases:
        times = {}
        results = {}
        for bname, backend in backends.items():
            times[bname], results[bname] = time_call(getattr(backend, name),
                                                     args, repeat)
        vals = list(results.values())
        for other in vals[1:]:
            if isinstance(vals[0], tuple):
                assert tuple(vals[0]) == tuple(other), f"{name} backends disagree"
            else:
                assert np.array_equal(vals[0], other), f"{name} backends disagree"
        row = f"  {name:14} " + " ".join(f"{times[n] * 1e3:>10.2f}ms" for n in backends)
        if "c" in times and "python" in times:
            row += f"  {times['python'] / times['c']:>9.1f}x"
        print(row)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    names = available_backends()
    print(f"backends available: {', '.join(names)}")
    if "c" not in names:
        print("note: compiled extension not built; timing the fallback only")

    for ring in (zn(200), matrix_ring(zn(2), 2), matrix_ring(zn(4), 2),
                 upper_triangular(zn(10), 2)):
        bench_ring(ring, args.repeat)


if __name__ == "__main__":
    main()
