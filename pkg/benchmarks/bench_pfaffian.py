#!/usr/bin/env python3
"""Benchmark the compiled Pfaffian kernel against the NumPy fallback.

The Pfaffian dominates profile computations (sum over distances of O(R^3)
eliminations), so the kernel choice sets the wall-clock of every steady-state
experiment. Run after building the extension:

    python benchmarks/bench_pfaffian.py
"""

import time

import numpy as np

from lrquench.pfaffian import KERNEL_NAME, SkewMatrix
from lrquench.pfaffian._reference import pfaffian_ltl as pf_python

try:
    from lrquench.pfaffian._kernel import pfaffian_ltl as pf_compiled
except ImportError:
    pf_compiled = None


def bench(fn, mats, repeats=3):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for m in mats:
            fn(m)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    print(f"active kernel: {KERNEL_NAME}")
    print(f"{'dim':>6} {'count':>6} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for dim, count in [(8, 2000), (32, 500), (64, 200), (128, 50), (256, 12), (512, 4)]:
        # scale entries so |pf| ~ e^(-dim/2) stays inside double range
        # (physical contraction matrices have entries <= 1 and bounded
        # Pfaffians; unscaled Gaussian matrices overflow beyond dim ~ 150)
        scale = 1.0 / np.sqrt(dim)
        mats = []
        for _ in range(count):
            x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            mats.append(SkewMatrix(scale * (x - x.T)).entries)
        t_py = bench(pf_python, mats)
        if pf_compiled is None:
            print(f"{dim:>6} {count:>6} {t_py:>12.4f} {'n/a':>12} {'n/a':>9}")
            continue
        t_cy = bench(pf_compiled, mats)
        ok = all(
            abs(pf_python(m) - pf_compiled(m)) <= 1e-9 * max(1.0, abs(pf_python(m)))
            for m in mats[: min(5, count)]
        )
        flag = "" if ok else "  MISMATCH"
        print(f"{dim:>6} {count:>6} {t_py:>12.4f} {t_cy:>12.4f} {t_py / t_cy:>8.1f}x{flag}")

    # end-to-end: one steady-state profile
    from lrquench.blocks import evolve, ground_state
    from lrquench.model import ModelParams
    from lrquench.observables import tc_profile

    gs = ground_state(ModelParams(N=200, h=0.5, alpha=0.5))
    st = evolve(gs, ModelParams(N=200, h=0.5, alpha=1.5), 200.0)
    t0 = time.perf_counter()
    tc_profile(st, range(1, 100))
    print(f"\nN=200 steady-state profile with active kernel: "
          f"{time.perf_counter() - t0:.2f} s")


if __name__ == "__main__":
    main()
