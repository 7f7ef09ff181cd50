"""Numeric verification of the standalone inequalities behind the bound proofs.

Four families, each checked pointwise and over grids:

  square    (1 - 1/s)^2 >= 1 - 2/s          for integer s >= 1 (slack is exactly 1/s^2)
  root      1 - 1/n <= (1 - 2/n)^(1/2 - 1/n) for integer n >= 3
  concave   (1 - r x)^(d/r) <= 1 - d x       for 0 <= x < 1/r
  exponent  1 - d x <= (1 - r x)^(d/r - d x) for 0 <= x < 1/r

The square inequality is evaluated in exact rationals; the others involve
irrational powers and are evaluated in binary64 with a rounding tolerance
of 1e-14 (their genuine slack is strictly positive inside the domain and
zero only at the boundary x = 0 / n -> infinity).  On the exponent
inequality the exponent d/r - d*x equals d*(1/r - x) > 0 across the whole
domain, so no extra restriction is needed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .bounds import ScanReport
from .core import InvalidParams, Prob, RoundStructure, validate_rounds

#: Rounding tolerance for binary64 exp/log round trips.
SLACK_TOL = 1e-14

#: Offset of the boundary-adjacent grid points (slack extremes sit at the edges).
EDGE_OFFSET = 1e-9

WHICH = ("square", "root", "concave", "exponent")


class CheckResult(NamedTuple):
    holds: bool
    slack: Prob


@dataclass(frozen=True)
class GridSpec:
    """Range to sweep: integer enumeration when samples is None."""

    lo: float
    hi: float
    samples: int | None = None
    rounds: RoundStructure | None = None

    def __post_init__(self):
        if self.hi < self.lo:
            raise InvalidParams(f"empty grid range [{self.lo}, {self.hi}]")
        if self.samples is not None and self.samples < 1:
            raise InvalidParams(f"samples must be >= 1, got {self.samples}")


def check_square_ineq(s: int) -> CheckResult:
    """Exact slack of (1 - 1/s)^2 - (1 - 2/s); algebraically 1/s^2."""
    if not isinstance(s, int) or s < 1:
        raise InvalidParams(f"s must be an integer >= 1, got {s!r}")
    slack = (1 - Fraction(1, s)) ** 2 - (1 - Fraction(2, s))
    return CheckResult(slack >= 0, slack)


def check_root_ineq(n: int) -> CheckResult:
    """Slack of (1 - 2/n)^(1/2 - 1/n) - (1 - 1/n) for integer n >= 3."""
    if not isinstance(n, int) or n < 3:
        raise InvalidParams(f"n must be an integer >= 3 (the base is <= 0 at n=2), got {n!r}")
    lhs = 1.0 - 1.0 / n
    rhs = (1.0 - 2.0 / n) ** (0.5 - 1.0 / n)
    slack = rhs - lhs
    return CheckResult(slack >= -SLACK_TOL, slack)


def _check_x_domain(x: float, rounds: RoundStructure) -> RoundStructure:
    rounds = validate_rounds(RoundStructure(*rounds))
    if not (0 <= x < 1 / rounds.r):
        raise InvalidParams(f"x must lie in [0, 1/{rounds.r}), got {x}")
    return rounds


def check_concave_ineq(x: float, rounds: RoundStructure) -> CheckResult:
    """Slack of (1 - d x) - (1 - r x)^(d/r)."""
    rounds = _check_x_domain(x, rounds)
    r, d = rounds
    slack = (1.0 - d * x) - (1.0 - r * x) ** (d / r)
    return CheckResult(slack >= -SLACK_TOL, slack)


def check_exponent_ineq(x: float, rounds: RoundStructure) -> CheckResult:
    """Slack of (1 - r x)^(d/r - d x) - (1 - d x)."""
    rounds = _check_x_domain(x, rounds)
    r, d = rounds
    slack = (1.0 - r * x) ** (d / r - d * x) - (1.0 - d * x)
    return CheckResult(slack >= -SLACK_TOL, slack)


def _integer_points(grid: GridSpec, minimum: int) -> np.ndarray:
    lo = max(minimum, int(math.ceil(grid.lo)))
    hi = int(math.floor(grid.hi))
    if hi < lo:
        raise InvalidParams(f"no integers in [{grid.lo}, {grid.hi}] above {minimum}")
    return np.arange(lo, hi + 1, dtype=np.float64)


def _x_points(grid: GridSpec, r: int) -> np.ndarray:
    if grid.lo < 0 or grid.hi >= 1 / r - EDGE_OFFSET / 2:
        raise InvalidParams(
            f"grid for x must sit inside [0, 1/{r} - {EDGE_OFFSET}], got [{grid.lo}, {grid.hi}]"
        )
    samples = grid.samples or 1000
    pts = np.linspace(grid.lo, grid.hi, samples)
    edges = np.array([EDGE_OFFSET, 1 / r - EDGE_OFFSET])
    edges = edges[(edges >= grid.lo) & (edges <= grid.hi)]
    return np.unique(np.concatenate([pts, edges]))


def grid_verify(which: str, grid: GridSpec) -> ScanReport:
    """Run one inequality check over a grid; report violations and min slack."""
    start = time.perf_counter()
    if which not in WHICH:
        raise InvalidParams(f"unknown inequality {which!r}, expected one of {WHICH}")

    params: dict = {"lo": grid.lo, "hi": grid.hi, "samples": grid.samples}
    violations: list[dict] = []

    if which == "square":
        lo = max(1, int(math.ceil(grid.lo)))
        hi = int(math.floor(grid.hi))
        if hi < lo:
            raise InvalidParams(f"no integers >= 1 in [{grid.lo}, {grid.hi}]")
        min_slack: tuple = (None, None)
        for s in range(lo, hi + 1):
            holds, slack = check_square_ineq(s)
            if not holds:
                violations.append({"s": s, "slack": float(slack)})
            if min_slack[0] is None or slack < min_slack[0]:
                min_slack = (slack, s)
        extremal = {
            "min_slack": {"value": float(min_slack[0]), "exact": str(min_slack[0]), "at": min_slack[1]},
            "points": hi - lo + 1,
        }
    elif which == "root":
        pts = _integer_points(grid, minimum=3)
        slack = (1.0 - 2.0 / pts) ** (0.5 - 1.0 / pts) - (1.0 - 1.0 / pts)
        extremal, violations = _float_scan_summary(pts, slack, "n")
    else:
        if grid.rounds is None:
            raise InvalidParams(f"the {which} inequality needs a round structure")
        rounds = validate_rounds(RoundStructure(*grid.rounds))
        r, d = rounds
        params["rounds"] = list(rounds)
        pts = _x_points(grid, r)
        if which == "concave":
            slack = (1.0 - d * pts) - (1.0 - r * pts) ** (d / r)
        else:
            slack = (1.0 - r * pts) ** (d / r - d * pts) - (1.0 - d * pts)
        extremal, violations = _float_scan_summary(pts, slack, "x")

    report = ScanReport(
        suite=f"lemmas:{which}",
        params=params,
        violations=violations,
        extremal=extremal,
    )
    report.runtime_ms = (time.perf_counter() - start) * 1000.0
    return report


def _float_scan_summary(pts: np.ndarray, slack: np.ndarray, var: str):
    bad = np.nonzero(slack < -SLACK_TOL)[0]
    violations = [{var: float(pts[i]), "slack": float(slack[i])} for i in bad]
    i_min = int(np.argmin(slack))
    extremal = {
        "min_slack": {"value": float(slack[i_min]), "at": float(pts[i_min])},
        "points": int(pts.size),
    }
    return extremal, violations
