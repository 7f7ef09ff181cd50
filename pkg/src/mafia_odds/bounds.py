"""Sandwich bounds on the win probability and their exhaustive verification.

The classic-game bound pair under scrutiny is

    sqrt(2k-2)/k * m/sqrt(n+m)  <=  W(n, m)  <=  R^eps * m/sqrt(n+m)

for m <= k, n >= m, n+m <= R (default eps = 1/100), plus the pointwise
variant that replaces R^eps by (n+m)^eps.  ``verify_theorem2`` sweeps the
whole domain against an exact table and records every violation of either
side; on exact tables the comparisons are performed in rational arithmetic
after squaring (and clearing the rational exponent), so the verdicts carry
no rounding error.

``fit_general_band`` is the empirical analogue for (r, d)-block games: it
returns the extremal constants of the normalized ratio
W(n,m) * (n+m)^(d/r) / m over a domain, i.e. the tightest band of that
shape that the computed table actually satisfies.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    CLASSIC,
    EXACT,
    BackendMismatch,
    EmptyDomain,
    GameState,
    InvalidParams,
    RoundStructure,
    validate_rounds,
    worker_count,
)
from .dp import WinTable

#: Relative width of the float prescreen band around the upper threshold;
#: comparisons inside the band fall back to exact integer arithmetic.
_PRESCREEN_MARGIN = 1e-9


@dataclass(frozen=True)
class BoundParams:
    """Domain and exponent of the classic sandwich bound."""

    k: int = 10
    R_cap: int = 100
    eps: Fraction = Fraction(1, 100)

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise InvalidParams(f"k must be an integer >= 1, got {self.k!r}")
        if not isinstance(self.R_cap, int) or self.R_cap < 2:
            raise InvalidParams(f"R_cap must be an integer >= 2, got {self.R_cap!r}")
        eps = Fraction(self.eps)
        object.__setattr__(self, "eps", eps)
        if not (0 < eps <= 1):
            raise InvalidParams(f"eps must lie in (0, 1], got {eps}")


@dataclass
class ScanReport:
    """Result of a grid verification: domain swept, violations, extremes."""

    suite: str
    params: dict
    violations: list = field(default_factory=list)
    extremal: dict = field(default_factory=dict)
    runtime_ms: float = 0.0

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "violations": self.violations,
            "extremal": self.extremal,
            "runtime_ms": self.runtime_ms,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def lower_bound(state: GameState, k: int, clamp: bool = True) -> float:
    """sqrt(2k-2)/k * m/sqrt(n+m), clamped to [0, 1].

    Vacuously 0 at k = 1.  Raises InvalidParams for m > k or an empty
    population.
    """
    n, m = state
    if not isinstance(k, int) or k < 1:
        raise InvalidParams(f"k must be an integer >= 1, got {k!r}")
    if m > k:
        raise InvalidParams(f"state has m={m} > k={k}")
    if n + m < 1:
        raise InvalidParams(f"population n+m must be >= 1, got {n + m}")
    raw = math.sqrt(2 * k - 2) / k * m / math.sqrt(n + m)
    return min(1.0, max(0.0, raw)) if clamp else raw


def upper_bound(
    state: GameState,
    params: BoundParams,
    pointwise: bool = False,
    clamp: bool = True,
) -> float:
    """R_cap^eps * m/sqrt(n+m) (or the pointwise (n+m)^eps variant), clamped.

    Raises InvalidParams when the state's population exceeds R_cap.
    """
    n, m = state
    s = n + m
    if s < 1:
        raise InvalidParams(f"population n+m must be >= 1, got {s}")
    if s > params.R_cap:
        raise InvalidParams(f"population {s} exceeds R_cap={params.R_cap}")
    base = s if pointwise else params.R_cap
    raw = float(base) ** float(params.eps) * m / math.sqrt(s)
    return min(1.0, max(0.0, raw)) if clamp else raw


def _scan_states(params: BoundParams, s_values) -> "iterator":
    for s in s_values:
        for m in range(1, min(params.k, s // 2) + 1):
            yield s - m, m, s


def _check_chunk(table: WinTable, params: BoundParams, pointwise: bool, s_values):
    """Verify one block of totals; returns (violations, ratio extremes)."""
    k = params.k
    eps = params.eps
    p, q = eps.numerator, eps.denominator
    exact = table.backend == EXACT
    coef_sq = 2 * k - 2  # lower coefficient squared, times k^2
    k2 = k * k
    thr_global = float(params.R_cap) ** float(eps)
    violations = []
    ratio_min = (math.inf, None)
    ratio_max = (-math.inf, None)

    for n, m, s in _scan_states(params, s_values):
        w = table.get(n, m)
        wf = float(w)
        ratio = wf * math.sqrt(s) / m
        if ratio < ratio_min[0]:
            ratio_min = (ratio, (n, m))
        if ratio > ratio_max[0]:
            ratio_max = (ratio, (n, m))

        # Lower side: coef^2 * m^2 <= W^2 * k^2 * s  (both sides nonnegative).
        if exact:
            low_viol = coef_sq * m * m > w * w * k2 * s
        else:
            low_viol = math.sqrt(coef_sq) / k * m / math.sqrt(s) > wf
        if low_viol:
            violations.append(
                _violation(table, n, m, w, "lower", lower_bound(GameState(n, m), k), exact)
            )

        # Upper side: W^2 * s <= base^(2 eps) * m^2, float-prescreened then exact.
        base = s if pointwise else params.R_cap
        thr = float(base) ** float(eps) if pointwise else thr_global
        if exact:
            if ratio > thr * (1.0 + _PRESCREEN_MARGIN):
                up_viol = True
            elif ratio < thr * (1.0 - _PRESCREEN_MARGIN):
                up_viol = False
            else:
                up_viol = (w * w * s) ** q > Fraction(base ** (2 * p) * m ** (2 * q))
        else:
            up_viol = ratio > thr
        if up_viol:
            bound = min(1.0, thr * m / math.sqrt(s))
            violations.append(_violation(table, n, m, w, "upper", bound, exact))

    return violations, ratio_min, ratio_max


def _violation(table, n, m, w, side, bound, exact):
    rec = {"n": n, "m": m, "w": float(w), "side": side, "bound": bound}
    if exact:
        rec["w_exact"] = str(w)
    return rec


def verify_theorem2(
    params: BoundParams,
    table: WinTable,
    require_exact: bool = True,
    pointwise: bool = False,
    workers: int | None = None,
) -> ScanReport:
    """Sweep 1 <= m <= k, n >= m, n+m <= R_cap against both bound sides.

    The domain is partitioned into contiguous total-population blocks
    processed by a thread pool (capped by MAFIA_ODDS_THREADS) and merged
    deterministically.  Raises BackendMismatch when exact verification is
    requested on a float table, InvalidParams when the table does not
    cover the requested domain.
    """
    start = time.perf_counter()
    if tuple(table.rounds) != CLASSIC:
        raise InvalidParams(f"bound verification is defined for rounds (2,1), table has {table.rounds}")
    if require_exact and table.backend != EXACT:
        raise BackendMismatch("exact verification requested on a float table")
    if table.cap < params.R_cap:
        raise InvalidParams(f"table cap {table.cap} < R_cap {params.R_cap}")
    needed_m = min(params.k, params.R_cap // 2)
    if table.m_top < needed_m:
        raise InvalidParams(f"table strip m<={table.m_top} cannot cover k={params.k}")

    s_values = list(range(2, params.R_cap + 1))
    n_workers = workers if workers is not None else worker_count()
    n_workers = max(1, min(n_workers, len(s_values)))
    blocks = [s_values[i::n_workers] for i in range(n_workers)]
    # Round-robin blocks balance the m-loop cost, which grows with s.

    if n_workers == 1:
        results = [_check_chunk(table, params, pointwise, blocks[0])]
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            results = list(
                pool.map(lambda b: _check_chunk(table, params, pointwise, b), blocks)
            )

    violations = [v for vs, _, _ in results for v in vs]
    violations.sort(key=lambda v: (v["n"] + v["m"], v["m"], v["side"]))
    ratio_min = min((r[1] for r in results), key=lambda t: t[0])
    ratio_max = max((r[2] for r in results), key=lambda t: t[0])

    report = ScanReport(
        suite="theorem2",
        params={
            "k": params.k,
            "R_cap": params.R_cap,
            "eps": str(params.eps),
            "pointwise": pointwise,
            "backend": table.backend,
            "workers": n_workers,
        },
        violations=violations,
        extremal={
            "ratio_min": {"value": ratio_min[0], "state": list(ratio_min[1])},
            "ratio_max": {"value": ratio_max[0], "state": list(ratio_max[1])},
            "lower_coef": math.sqrt(2 * params.k - 2) / params.k,
            "upper_threshold": "pointwise" if pointwise else float(params.R_cap) ** float(params.eps),
        },
    )
    report.runtime_ms = (time.perf_counter() - start) * 1000.0
    return report


def fit_general_band(
    rounds: RoundStructure,
    cap: int,
    m_cap: int,
    table: WinTable,
    *,
    m_min: int = 1,
    cap_min: int = 2,
) -> tuple[float, float, ScanReport]:
    """Extremal band constants of W(n,m) * (n+m)^(d/r) / m over a domain.

    Sweeps n >= m, m_min <= m <= m_cap, cap_min <= n+m <= cap and returns
    (f_hat, g_hat, report) where f_hat/g_hat are the min/max of the
    normalized ratio; by construction the band [f_hat, g_hat] holds over
    the swept domain.  Raises EmptyDomain when no state qualifies.
    """
    start = time.perf_counter()
    rounds = validate_rounds(RoundStructure(*rounds))
    if tuple(table.rounds) != tuple(rounds):
        raise InvalidParams(f"table was built for rounds {table.rounds}, not {tuple(rounds)}")
    if table.cap < cap:
        raise InvalidParams(f"table cap {table.cap} < requested cap {cap}")
    if table.m_top < min(m_cap, cap // 2):
        raise InvalidParams(f"table strip m<={table.m_top} cannot cover m_cap={m_cap}")

    alpha = rounds.d / rounds.r
    f_hat = (math.inf, None)
    g_hat = (-math.inf, None)
    count = 0
    for s in range(max(2, cap_min), cap + 1):
        for m in range(max(1, m_min), min(m_cap, s // 2) + 1):
            n = s - m
            ratio = float(table.get(n, m)) * s**alpha / m
            count += 1
            if ratio < f_hat[0]:
                f_hat = (ratio, (n, m))
            if ratio > g_hat[0]:
                g_hat = (ratio, (n, m))
    if count == 0:
        raise EmptyDomain(
            f"no state satisfies n >= m, {m_min} <= m <= {m_cap}, {cap_min} <= n+m <= {cap}"
        )

    report = ScanReport(
        suite="conjecture-band",
        params={
            "rounds": list(rounds),
            "cap": cap,
            "m_cap": m_cap,
            "m_min": m_min,
            "cap_min": cap_min,
            "alpha": alpha,
            "states": count,
            "backend": table.backend,
        },
        violations=[],
        extremal={
            "f_hat": {"value": f_hat[0], "state": list(f_hat[1])},
            "g_hat": {"value": g_hat[0], "state": list(g_hat[1])},
        },
    )
    report.runtime_ms = (time.perf_counter() - start) * 1000.0
    return f_hat[0], g_hat[0], report
