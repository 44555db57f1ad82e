#!/usr/bin/env python3
"""Timings for the hot kernels: compiled extension vs numpy fallback.

Workloads mirror what the traversal and the lag argmax actually see:
160-ish peak sets over a 960-bin spectrum, and a 3200-sample scan of 320 lags.

Run: python benchmarks/bench_kernels.py
"""
import time

import numpy as np

from ofdmblind._kernels import available_backends


def time_call(fn, *args, reps):
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(reps):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / reps)
    return best


def peak_workloads():
    rng = np.random.default_rng(0)
    clean = np.arange(6, 960, 6, dtype=np.int64)
    noisy = np.unique(
        np.concatenate([clean, rng.integers(0, 960, size=60)])
    ).astype(np.int64)
    sparse = np.unique(rng.integers(0, 2000, size=24)).astype(np.int64)
    return {
        "progression clean 160 peaks": (clean, 200),
        "progression noisy 200 peaks": (noisy, 200),
        "progression sparse 24 peaks": (sparse, 2000),
    }


def scan_workload():
    rng = np.random.default_rng(1)
    x = rng.standard_normal(3200) + 1j * rng.standard_normal(3200)
    return x, 2880, 320


def main():
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    rows = []
    for name, (peaks, reps) in peak_workloads().items():
        times = {
            b: time_call(mod.progression_search, peaks, 1, reps=reps)
            for b, mod in backends.items()
        }
        rows.append((name, times))
    x, n_terms, k_max = scan_workload()
    rows.append(
        (
            "autocorr scan 3200x320",
            {
                b: time_call(mod.autocorr_scan, x, n_terms, k_max, reps=20)
                for b, mod in backends.items()
            },
        )
    )

    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for name, times in rows:
        line = f"{name:<{width}}  " + "".join(
            f"{times[b] * 1e6:>10.1f}us" for b in backends
        )
        if "compiled" in times and "python" in times:
            line += f"{times['python'] / times['compiled']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
