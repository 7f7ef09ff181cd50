"""Command-line interface.

Subcommands:
  exact      print one win probability (exact fraction and decimal)
  verify     run a verification suite and emit a JSON report
  scan       sweep an eta grid and emit the win-probability curve as CSV
  simulate   Monte Carlo estimate cross-checked against the recursion value

Exit codes: 0 when the command succeeds and nothing is violated, 1 when a
verification finds violations or a simulation lands more than 4 standard
errors from the recursion value, 2 on usage errors.

Formats: CSV rows use 12 significant digits and the fixed header
``R,eta,M,r,d,W,lower,upper,within,ratio``; verify reports are JSON with
top-level keys {suite, params, violations, extremal, runtime_ms};
simulation JSON has keys {state, rounds, trials, seed, wins, estimate,
stderr, dp_value, z} and is byte-identical across runs with the same
arguments.  MAFIA_ODDS_THREADS caps scan parallelism.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

import numpy as np

from .bounds import BoundParams, fit_general_band, verify_theorem2
from .core import (
    CLASSIC,
    EXACT,
    FLOAT,
    GameState,
    InvalidParams,
    MafiaOddsError,
    RoundStructure,
)
from .counterexamples import claim1_witness, example1, example2, example3
from .dp import EXACT_CAP_DEFAULT, build_table, fits_exact_budget, win_prob_general
from .inequalities import GridSpec, grid_verify
from .montecarlo import SimConfig, estimate

#: Round structures exercised by the lemmas suite.
LEMMA_ROUNDS = ((2, 1), (3, 1), (5, 2))

CSV_HEADER = "R,eta,M,r,d,W,lower,upper,within,ratio"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _parse_eps(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidParams(f"cannot parse exponent {text!r}; use forms like 1/100 or 0.01") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_exact(args) -> int:
    value = win_prob_general(
        GameState(args.n, args.m),
        RoundStructure(*args.rounds),
        backend=args.backend,
        exact_cap=args.exact_cap,
    )
    if args.backend == EXACT:
        print(f"{value} ≈ {float(value):.6g}")
    else:
        print(_fmt(value))
    return 0


def _verify_theorem2(args) -> dict:
    params = BoundParams(k=args.k, R_cap=args.R, eps=_parse_eps(args.eps))
    m_cap = min(args.k, args.R // 2)
    table = build_table(args.R, CLASSIC, EXACT, m_cap=m_cap, exact_cap=args.exact_cap)
    report = verify_theorem2(params, table, pointwise=args.pointwise)
    return report.to_dict()


def _verify_lemmas(args) -> dict:
    start = time.perf_counter()
    reports = [
        grid_verify("square", GridSpec(1, args.s_max)),
        grid_verify("root", GridSpec(3, args.n_max)),
    ]
    for r, d in LEMMA_ROUNDS:
        rounds = RoundStructure(r, d)
        grid = GridSpec(0.0, 1 / r - 1e-6, samples=args.grid_samples, rounds=rounds)
        reports.append(grid_verify("concave", grid))
        reports.append(grid_verify("exponent", grid))
    violations = []
    extremal = {}
    for rep in reports:
        which = rep.suite.split(":", 1)[1]
        key = which if which in ("square", "root") else f"{which}{rep.params['rounds']}"
        extremal[key] = rep.extremal["min_slack"]
        violations.extend({**v, "which": key} for v in rep.violations)
    return {
        "suite": "lemmas",
        "params": {
            "s_max": args.s_max,
            "n_max": args.n_max,
            "grid_samples": args.grid_samples,
            "rounds": [list(r) for r in LEMMA_ROUNDS],
        },
        "violations": violations,
        "extremal": extremal,
        "runtime_ms": (time.perf_counter() - start) * 1000.0,
    }


def _verify_band(args) -> dict:
    rounds = RoundStructure(*args.rounds)
    table = build_table(args.cap, rounds, FLOAT, m_cap=args.m_cap)
    _, _, report = fit_general_band(rounds, args.cap, args.m_cap, table)
    return report.to_dict()


def _verify_counterexamples(args) -> dict:
    start = time.perf_counter()
    reports = [
        example1(100, 1.0),
        example1(10**4, 1.0),
        example1(10**6, 1.0),
        claim1_witness(1000),
        example2(10**4, 0.01),
        example3(10**4, 0.01, 100, f_choice="d_squared"),
    ]
    violations = []
    for rep in reports:
        violations.extend(
            {**c.to_dict(), "construction": rep.construction}
            for c in rep.checks
            if not c.holds
        )
    return {
        "suite": "counterexamples",
        "params": {"constructions": [rep.construction for rep in reports]},
        "violations": violations,
        "extremal": {"reports": [rep.to_dict() for rep in reports]},
        "runtime_ms": (time.perf_counter() - start) * 1000.0,
    }


def cmd_verify(args) -> int:
    runner = {
        "theorem2": _verify_theorem2,
        "lemmas": _verify_lemmas,
        "conjecture-band": _verify_band,
        "counterexamples": _verify_counterexamples,
    }[args.suite]
    payload = runner(args)
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0 if not payload["violations"] else 1


def cmd_scan(args) -> int:
    R = args.R
    if R < 4:
        raise InvalidParams(f"scan needs R >= 4, got {R}")
    start, stop, steps_f = args.eta_grid
    steps = int(steps_f)
    if steps != steps_f or steps < 1:
        raise InvalidParams(f"step count must be a positive integer, got {steps_f}")
    if not (0 < start <= stop):
        raise InvalidParams(f"need 0 < start <= stop, got [{start}, {stop}]")
    rounds = RoundStructure(*args.rounds)
    alpha = rounds.d / rounds.r
    scale = float(R) ** alpha

    etas = np.linspace(start, stop, steps)
    mafia_sizes = [math.ceil(eta * scale) for eta in etas]
    backend = EXACT if R <= EXACT_CAP_DEFAULT else FLOAT
    m_cap = None if backend == EXACT else min(max(mafia_sizes), R)
    table = build_table(R, rounds, backend, m_cap=m_cap)

    upper_coef = float(R) ** (1 / 100)
    lines = [CSV_HEADER]
    for eta, M in zip(etas, mafia_sizes):
        if M >= R:
            w = 1.0  # all-mafia saturation
        else:
            w = float(table.get(R - M, M))
        lower = min(1.0, math.sqrt(2 * M - 2) / scale)
        upper = min(1.0, upper_coef * M / scale)
        within = lower <= w <= upper
        ratio = w * scale / M
        lines.append(
            f"{R},{_fmt(eta)},{M},{rounds.r},{rounds.d},{_fmt(w)},{_fmt(lower)},"
            f"{_fmt(upper)},{'true' if within else 'false'},{_fmt(ratio)}"
        )
    _emit("\n".join(lines), args.out)
    return 0


def cmd_simulate(args) -> int:
    state = GameState(args.n, args.m)
    rounds = RoundStructure(*args.rounds)
    config = SimConfig(trials=args.trials, seed=args.seed, fidelity=args.fidelity, rounds=rounds)
    result = estimate(state, config)

    backend = EXACT if fits_exact_budget(args.n + args.m, args.m) else FLOAT
    dp_value = float(win_prob_general(state, rounds, backend=backend))
    if result.stderr > 0:
        z = (result.estimate - dp_value) / result.stderr
    else:
        z = 0.0 if result.estimate == dp_value else math.inf
    payload = {
        "state": {"n": args.n, "m": args.m},
        "rounds": {"r": rounds.r, "d": rounds.d},
        "trials": result.trials,
        "seed": args.seed,
        "wins": result.wins,
        "estimate": result.estimate,
        "stderr": result.stderr,
        "dp_value": dp_value,
        "z": z,
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0 if abs(z) <= 4 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mafia-odds",
        description="Exact and statistical win-probability engine for the mafia game",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="print one win probability")
    p.add_argument("n", type=int, help="civilian count")
    p.add_argument("m", type=int, help="mafia count")
    p.add_argument("--rounds", nargs=2, type=int, default=(2, 1), metavar=("R", "D"))
    p.add_argument("--backend", choices=(EXACT, FLOAT), default=EXACT)
    p.add_argument("--exact-cap", type=int, default=EXACT_CAP_DEFAULT)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="run a verification suite (JSON report)")
    p.add_argument(
        "--suite",
        required=True,
        choices=("theorem2", "lemmas", "conjecture-band", "counterexamples"),
    )
    p.add_argument("--k", type=int, default=10, help="mafia-size cap (theorem2)")
    p.add_argument("--R", type=int, default=100, help="population cap (theorem2)")
    p.add_argument("--eps", default="1/100", help="upper-bound exponent, e.g. 1/100 or 0.0001")
    p.add_argument("--pointwise", action="store_true", help="use the (n+m)^eps upper form")
    p.add_argument("--exact-cap", type=int, default=EXACT_CAP_DEFAULT)
    p.add_argument("--grid-samples", type=int, default=100_000, help="x-grid size (lemmas)")
    p.add_argument("--n-max", type=int, default=100_000, help="integer scan cap (lemmas)")
    p.add_argument("--s-max", type=int, default=10_000, help="exact integer scan cap (lemmas)")
    p.add_argument("--rounds", nargs=2, type=int, default=(3, 1), metavar=("R", "D"))
    p.add_argument("--cap", type=int, default=300, help="population cap (conjecture-band)")
    p.add_argument("--m-cap", type=int, default=5, help="mafia cap (conjecture-band)")
    p.add_argument("--out", help="write the report to this path instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="sweep an eta grid; CSV curve of W(R-M, M)")
    p.add_argument("--R", type=int, required=True, help="total population")
    p.add_argument(
        "--eta-grid",
        nargs=3,
        type=float,
        required=True,
        metavar=("START", "STOP", "STEPS"),
    )
    p.add_argument("--rounds", nargs=2, type=int, default=(2, 1), metavar=("R", "D"))
    p.add_argument("--out", help="write CSV to this path instead of stdout")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("simulate", help="Monte Carlo estimate vs the recursion value")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fidelity", choices=("state", "vote"), default="state")
    p.add_argument("--rounds", nargs=2, type=int, default=(2, 1), metavar=("R", "D"))
    p.add_argument("--out", help="write JSON to this path instead of stdout")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except MafiaOddsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
