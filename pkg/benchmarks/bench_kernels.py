#!/usr/bin/env python3
"""Benchmark the criterion sweep kernels: jitted (numba) vs pure numpy.

Run with no arguments to compare both backends; the script re-executes
itself under each HYSHIFT_BACKEND so the import-time backend choice is
exercised exactly the way library users hit it.

    python3 benchmarks/bench_kernels.py --khorizon 131072 --nmax 64
"""

import argparse
import json
import os
import subprocess
import sys
import time


def _build_inputs(k_hi: int, n_max: int):
    import numpy as np

    from hyshift import parse_space_spec, parse_weight_spec

    w = parse_weight_spec("periodic:[3,1,0.25,2]")
    space = parse_space_spec("lp:2")
    ns = np.arange(1, n_max + 1, dtype=np.int64)
    S = np.zeros(k_hi + n_max + 1)
    S[1:] = np.cumsum(w.log_array(1, k_hi + n_max))
    A = np.zeros(k_hi + 1)
    Bv = np.zeros(k_hi + n_max + 1)
    return S, A, Bv, ns


def _best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_worker(k_hi: int, n_max: int, repeats: int) -> dict:
    from hyshift import BACKEND
    from hyshift._kernels import max_window_min, sweep_min_grid

    S, A, Bv, ns = _build_inputs(k_hi, n_max)

    # warm-up triggers the one-time JIT compile on the numba backend
    sweep_min_grid(S, A, Bv, ns, 0, k_hi)
    max_window_min(S, A, Bv, 8, 8, k_hi, 0)

    timings = {}
    mins, _ = sweep_min_grid(S, A, Bv, ns, 0, k_hi)
    timings["sweep_min_grid"] = _best_of(
        lambda: sweep_min_grid(S, A, Bv, ns, 0, k_hi), repeats
    )
    v, _ = max_window_min(S, A, Bv, 8, 8, k_hi, 0)
    timings["max_window_min"] = _best_of(
        lambda: max_window_min(S, A, Bv, 8, 8, k_hi, 0), repeats
    )
    return {
        "backend": BACKEND,
        "k_horizon": k_hi,
        "n_max": n_max,
        "timings": timings,
        "checksum": [float(mins.sum()), float(v)],
    }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--khorizon", type=int, default=1 << 17)
    ap.add_argument("--nmax", type=int, default=64)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.worker:
        print(json.dumps(run_worker(args.khorizon, args.nmax, args.repeats)))
        return 0

    results = {}
    for backend in ("numpy", "numba"):
        env = dict(os.environ, HYSHIFT_BACKEND=backend)
        proc = subprocess.run(
            [
                sys.executable,
                os.path.abspath(__file__),
                "--worker",
                "--khorizon",
                str(args.khorizon),
                "--nmax",
                str(args.nmax),
                "--repeats",
                str(args.repeats),
            ],
            capture_output=True,
            text=True,
            env=env,
        )
        if proc.returncode != 0:
            print(f"{backend}: unavailable ({proc.stderr.strip().splitlines()[-1]})")
            continue
        results[backend] = json.loads(proc.stdout.strip().splitlines()[-1])

    if not results:
        print("no backend could run")
        return 1

    print(f"grid: n <= {args.nmax}, k <= {args.khorizon}, best of {args.repeats}")
    kernels = sorted(next(iter(results.values()))["timings"])
    header = f"{'kernel':<18}" + "".join(f"{b:>12}" for b in results) + f"{'speedup':>10}"
    print(header)
    for kernel in kernels:
        times = {b: results[b]["timings"][kernel] for b in results}
        row = f"{kernel:<18}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in results)
        if len(times) == 2:
            a, b = times.get("numpy"), times.get("numba")
            row += f"{a / b:>9.2f}x"
        print(row)

    sums = {b: r["checksum"] for b, r in results.items()}
    if len(sums) == 2:
        ref, other = sums["numpy"], sums["numba"]
        gap = max(abs(x - y) for x, y in zip(ref, other))
        agree = gap < 1e-9 * max(1.0, *(abs(x) for x in ref))
        print(f"value agreement: {'ok' if agree else f'MISMATCH (gap {gap:.2e})'}")
        if not agree:
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
