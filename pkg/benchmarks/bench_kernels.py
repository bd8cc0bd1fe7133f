"""Benchmark the jitted kernels against the pure-numpy fallback.

Times the two hot paths behind the package, weight enumeration over a
code's kernel basis and batched inversion of the tilt equation, on both
backends and reports best-of-N wall times plus the speedup.  Outputs of
the two backends are cross-checked for equality before timing counts.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --repeat 5 --points 500000
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ldpc_spectra import EnsembleParams, build_field, enumerate_weights
from ldpc_spectra.growth import z_left_endpoint
from ldpc_spectra.kernels import HAS_NUMBA, solve_zhat_batch
from ldpc_spectra.sim import sample_code


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_enumeration(backends, repeat: int, cap: int):
    cases = [
        EnsembleParams(q=2, c=3, d=6, n=40),
        EnsembleParams(q=2, c=3, d=6, n=44),
        EnsembleParams(q=4, c=2, d=4, n=16),
    ]
    rows = []
    for params in cases:
        field = build_field(params.q)
        sample = sample_code(params, (0, 0), field)
        timings = {}
        results = {}
        for backend in backends:
            run = lambda: enumerate_weights(
                field, sample.parity_matrix, cap=cap, backend=backend
            )
            results[backend] = run().counts   # warm-up, compiles the jit path
            timings[backend] = best_of(run, repeat)
        if len(backends) == 2:
            assert results[backends[0]] == results[backends[1]], params
        label = f"enumerate ({params.q},{params.c},{params.d}) n={params.n}"
        rows.append((label, timings))
    return rows


def bench_tilt_batch(backends, repeat: int, points: int):
    rows = []
    for q, d in ((2, 6), (3, 6), (2, 5)):
        lo = -1.0 / (q - 1)
        z = np.linspace(z_left_endpoint(q, d) + 1e-9, 1.0 - 1e-9, points)
        timings = {}
        results = {}
        for backend in backends:
            run = lambda: solve_zhat_batch(q, d, z, lo, 1.0, 1e-12, 200, backend)
            results[backend] = run()          # warm-up, compiles the jit path
            timings[backend] = best_of(run, repeat)
        if len(backends) == 2:
            assert (results[backends[0]] == results[backends[1]]).all(), (q, d)
        label = f"tilt roots  ({q},{d}) points={points}"
        rows.append((label, timings))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timed runs per case")
    parser.add_argument("--points", type=int, default=200_000,
                        help="batch size for the tilt-equation cases")
    parser.add_argument("--cap", type=int, default=2**22,
                        help="codeword cap for the enumeration cases")
    args = parser.parse_args()

    backends = ["numpy", "numba"] if HAS_NUMBA else ["numpy"]
    if not HAS_NUMBA:
        print("numba not importable; timing the numpy fallback only")

    rows = bench_enumeration(backends, args.repeat, args.cap)
    rows += bench_tilt_batch(backends, args.repeat, args.points)

    width = max(len(label) for label, _ in rows)
    header = f"{'case':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, timings in rows:
        line = f"{label:<{width}}  " + "".join(
            f"{timings[b] * 1e3:>10.2f}ms" for b in backends
        )
        if len(backends) == 2:
            line += f"{timings['numpy'] / timings['numba']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
