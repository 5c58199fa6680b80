#!/usr/bin/env python3
"""Benchmark the compiled grid kernels against the pure-Python twin.

Workloads:
  subset_stats   - full sweep over all 65535 nonempty subsets of a 4x4 box
  subset_boundary- 200k random masks on an 8x8 box
  anneal         - one 20k-iteration annealing run (kernel-bound inner loop)

Run:  python benchmarks/bench_kernels.py
"""

import random
import time

from latticeineq import kernels


def time_sweep(backend):
    dims = (4, 4)
    start = time.perf_counter()
    acc = 0
    for mask in range(1, 1 << 16):
        acc += backend.subset_stats(mask, dims)[0]
    return time.perf_counter() - start, acc


def time_boundary(backend, count=200_000, seed=1):
    rng = random.Random(seed)
    dims = (8, 8)
    masks = [rng.randrange(1, 1 << 64) for _ in range(count)]
    start = time.perf_counter()
    acc = 0
    for mask in masks:
        acc += backend.subset_boundary(mask, dims)
    return time.perf_counter() - start, acc


def time_anneal(backend_name):
    """Fresh interpreter so the import-time backend selection is exercised."""
    import os
    import subprocess
    import sys

    env = os.environ.copy()
    if backend_name == "pure":
        env["LATTICE_INEQ_PURE"] = "1"
    else:
        env.pop("LATTICE_INEQ_PURE", None)
    code = (
        "import time\n"
        "from latticeineq.search import anneal_sets\n"
        "t = time.perf_counter()\n"
        "trace = anneal_sets(2, 12, iters=20000, seed=123)\n"
        "print(time.perf_counter() - t, trace.best_value)\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True,
        check=True,
    ).stdout.split()
    return float(out[0]), float(out[1])


def main():
    backends = kernels.backends()
    print(f"active backend: {kernels.BACKEND}")
    print(f"available: {', '.join(backends)}\n")

    results = {}
    for name, backend in backends.items():
        sweep_t, sweep_acc = time_sweep(backend)
        bound_t, bound_acc = time_boundary(backend)
        results[name] = (sweep_t, bound_t)
        print(f"[{name}]")
        print(f"  subset_stats 4x4 sweep (65535 masks): {sweep_t:.3f}s "
              f"({sweep_t / 65535 * 1e6:.2f} us/mask, checksum {sweep_acc})")
        print(f"  subset_boundary 8x8 (200k masks):     {bound_t:.3f}s "
              f"({bound_t / 200_000 * 1e6:.2f} us/mask, checksum {bound_acc})")

    if len(results) == 2:
        pure_sweep, pure_bound = results["pure"]
        comp_sweep, comp_bound = results["compiled"]
        print("\nspeedup compiled vs pure: "
              f"subset_stats {pure_sweep / comp_sweep:.1f}x, "
              f"subset_boundary {pure_bound / comp_bound:.1f}x")

    for name in backends:
        elapsed, best = time_anneal(name)
        print(f"anneal 20k iters via {name:<8} backend: {elapsed:.3f}s "
              f"(best ratio {best:.4f})")


if __name__ == "__main__":
    main()
