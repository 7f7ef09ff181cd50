#!/usr/bin/env python3
"""Benchmark the compiled Monte Carlo kernels against the numpy fallback.

Both backends consume identical pre-drawn uniforms and return identical
outcome arrays; this script measures throughput only.

Run:
    python benchmarks/bench_kernels.py [--trials 200000] [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mafia_odds.kernels import get_impl


def best_time(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=200_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    u_state = rng.random((args.trials, 29))  # (50, 7) games
    u_block = rng.random((args.trials, 20))  # (50, 7) games in (3, 1) blocks
    u_votes = rng.random((args.trials, 13))  # (10, 3) day round
    tie = rng.random(args.trials)

    cases = [
        ("state (50,7)", "run_state_games", (50, 7, u_state)),
        ("block (50,7) r=3 d=1", "run_block_games", (50, 7, 3, 1, u_block)),
        ("vote round, 13 seats", "vote_day_seats", (u_votes, tie)),
    ]

    backends = {"python": get_impl("python")}
    try:
        backends["compiled"] = get_impl("compiled")
    except ImportError:
        print("compiled kernels not built (run: python setup.py build_ext --inplace)\n")

    print(f"{args.trials} trials per call, best of {args.repeats}\n")
    print(f"{'kernel':<24} {'backend':<10} {'time':>10} {'Mtrials/s':>11} {'speedup':>9}")
    for label, fn_name, fn_args in cases:
        base = None
        for name in ("python", "compiled"):
            impl = backends.get(name)
            if impl is None:
                continue
            seconds = best_time(getattr(impl, fn_name), *fn_args, repeats=args.repeats)
            rate = args.trials / seconds / 1e6
            speedup = "" if base is None else f"{base / seconds:8.1f}x"
            if base is None:
                base = seconds
            print(f"{label:<24} {name:<10} {seconds * 1e3:>8.2f}ms {rate:>11.2f} {speedup:>9}")
        if "compiled" in backends:
            py_out = getattr(backends["python"], fn_name)(*fn_args)
            c_out = getattr(backends["compiled"], fn_name)(*fn_args)
            assert np.array_equal(py_out, c_out), f"backend mismatch in {fn_name}"
    print("\noutputs verified identical across backends")


if __name__ == "__main__":
    main()
