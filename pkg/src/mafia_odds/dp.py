"""Bottom-up evaluation of the mafia win-probability recursion.

The classic game satisfies

    W(n, m) = n/(n+m) * W(n-2, m) + m/(n+m) * W(n-1, m-1)

for interior positions, and the (r, d)-block generalization

    W(n, m) = n/(n+m) * W(n-r, m) + m/(n+m) * W(n-r+d, m-d)

with children resolved through :func:`mafia_odds.core.classify`.  Both
children of a position with total s = n + m sit at total s - r, so tables
are filled bottom-up by increasing total (then increasing m), which keeps
evaluation iterative (no recursion depth) and deterministic.

Backends: ``exact`` stores :class:`fractions.Fraction` values with no
rounding anywhere; ``float`` stores binary64 in a numpy grid (two-term
convex combinations are well-conditioned, so no compensated summation).
Exact tables are guarded by a state budget because rational numerators
and denominators grow with the population cap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

import numpy as np

from .core import (
    BACKENDS,
    CLASSIC,
    EXACT,
    FLOAT,
    GameState,
    InvalidParams,
    MissingEntry,
    Outcome,
    Prob,
    ResourceLimit,
    RoundStructure,
    classify,
    validate_rounds,
    validate_state,
)

#: Default population cap for exact tables; the budget below derives from it.
EXACT_CAP_DEFAULT = 200

_F0 = Fraction(0)
_F1 = Fraction(1)
_F_HALF = Fraction(1, 2)


def exact_state_budget(exact_cap: int = EXACT_CAP_DEFAULT) -> int:
    """State budget for exact builds: the full-triangle count at ``exact_cap``."""
    return exact_cap * (exact_cap + 3) // 2


def _planned_states(cap: int, m_cap: int | None) -> int:
    if m_cap is None or m_cap >= cap:
        return cap * (cap + 3) // 2
    return m_cap * (m_cap + 3) // 2 + (cap - m_cap) * (m_cap + 1)


def fits_exact_budget(cap: int, m_cap: int | None = None, exact_cap: int = EXACT_CAP_DEFAULT) -> bool:
    """Whether an exact build of this size stays inside the state budget."""
    return _planned_states(cap, m_cap) <= exact_state_budget(exact_cap)


class WinTable:
    """Memoized map from game states to win probabilities.

    Covers every state with 0 <= m <= m_cap (or m <= n+m when unbounded),
    n >= 0 and 1 <= n+m <= cap, for one round structure and one backend.
    Read-only after construction; lookups are safe from concurrent readers.
    """

    def __init__(
        self,
        rounds: RoundStructure,
        backend: str,
        cap: int,
        m_cap: int | None,
        entries: dict[tuple[int, int], Fraction] | None = None,
        grid: np.ndarray | None = None,
    ):
        self.rounds = rounds
        self.backend = backend
        self.cap = cap
        self.m_cap = m_cap
        self._entries = entries
        self._grid = grid

    @property
    def m_top(self) -> int:
        """Largest mafia count stored."""
        return self.cap if self.m_cap is None else min(self.m_cap, self.cap)

    def __len__(self) -> int:
        return _planned_states(self.cap, self.m_cap)

    def __contains__(self, state) -> bool:
        n, m = state
        return 0 <= m <= self.m_top and n >= 0 and 1 <= n + m <= self.cap

    def get(self, n: int, m: int) -> Prob:
        """Value at (n, m); raises MissingEntry outside the stored domain."""
        if (n, m) not in self:
            raise MissingEntry(
                f"(n={n}, m={m}) is outside this table "
                f"(cap={self.cap}, m_cap={self.m_cap})"
            )
        if self._entries is not None:
            return self._entries[(n, m)]
        return float(self._grid[m, n])

    def states(self) -> Iterator[GameState]:
        """All stored states, ordered by (n+m, m)."""
        for s in range(1, self.cap + 1):
            for m in range(0, min(s, self.m_top) + 1):
                yield GameState(s - m, m)

    def items(self) -> Iterator[tuple[GameState, Prob]]:
        for state in self.states():
            yield state, self.get(*state)


def build_table(
    cap: int,
    rounds: RoundStructure = CLASSIC,
    backend: str = EXACT,
    m_cap: int | None = None,
    exact_cap: int = EXACT_CAP_DEFAULT,
) -> WinTable:
    """Fill a WinTable bottom-up for all states with 1 <= n+m <= cap.

    ``m_cap`` restricts the fill to the strip m <= m_cap (the recursion
    never needs larger m to evaluate the strip), which is how big-cap
    exact verifications stay inside the state budget.

    Raises ResourceLimit when an exact build would exceed the budget of
    ``exact_state_budget(exact_cap)`` states, InvalidParams/InvalidRounds
    on bad arguments.
    """
    if not isinstance(cap, int) or cap < 1:
        raise InvalidParams(f"cap must be an integer >= 1, got {cap!r}")
    if m_cap is not None and (not isinstance(m_cap, int) or m_cap < 0):
        raise InvalidParams(f"m_cap must be None or an integer >= 0, got {m_cap!r}")
    rounds = validate_rounds(RoundStructure(*rounds))
    if backend not in BACKENDS:
        raise InvalidParams(f"backend must be one of {BACKENDS}, got {backend!r}")

    if backend == EXACT:
        planned = _planned_states(cap, m_cap)
        budget = exact_state_budget(exact_cap)
        if planned > budget:
            raise ResourceLimit(
                f"exact build of {planned} states exceeds the budget of {budget} "
                f"(exact_cap={exact_cap}); raise exact_cap, lower cap, or pass m_cap"
            )

    m_top = cap if m_cap is None else min(m_cap, cap)
    if backend == EXACT:
        entries = _fill_exact(cap, m_top, rounds)
        return WinTable(rounds, EXACT, cap, m_cap, entries=entries)
    grid = _fill_float(cap, m_top, rounds)
    return WinTable(rounds, FLOAT, cap, m_cap, grid=grid)


def _fill_exact(cap: int, m_top: int, rounds: RoundStructure) -> dict:
    r, d = rounds
    classic = tuple(rounds) == (2, 1)
    entries: dict[tuple[int, int], Fraction] = {}

    def child(n: int, m: int) -> Fraction:
        if m <= 0:
            return _F0
        if n < m:
            return _F1
        if classic and n == 1 and m == 1:
            return _F_HALF
        return entries[(n, m)]

    for s in range(1, cap + 1):
        for m in range(0, min(s, m_top) + 1):
            n = s - m
            if m == 0:
                entries[(n, m)] = _F0
            elif n < m:
                entries[(n, m)] = _F1
            elif classic and n == 1 and m == 1:
                entries[(n, m)] = _F_HALF
            else:
                entries[(n, m)] = Fraction(n, s) * child(n - r, m) + Fraction(m, s) * child(
                    n - r + d, m - d
                )
    return entries


def _fill_float(cap: int, m_top: int, rounds: RoundStructure) -> np.ndarray:
    r, d = rounds
    classic = tuple(rounds) == (2, 1)
    grid = np.full((m_top + 1, cap + 1), np.nan)

    def resolve(nc: np.ndarray, mc: np.ndarray) -> np.ndarray:
        vals = grid[np.clip(mc, 0, m_top), np.clip(nc, 0, cap)]
        if classic:
            vals = np.where((nc == 1) & (mc == 1), 0.5, vals)
        vals = np.where(nc < mc, 1.0, vals)
        vals = np.where(mc <= 0, 0.0, vals)
        return vals

    for s in range(1, cap + 1):
        mm = np.arange(0, min(s, m_top) + 1)
        nn = s - mm
        c1 = resolve(nn - r, mm)
        c2 = resolve(nn - r + d, mm - d)
        interior = (nn * c1 + mm * c2) / s
        w = np.where(mm == 0, 0.0, np.where(nn < mm, 1.0, interior))
        if classic and s == 2:
            w = np.where((nn == 1) & (mm == 1), 0.5, w)
        grid[mm, nn] = w
    return grid


def win_prob_general(
    state: GameState,
    rounds: RoundStructure,
    backend: str = EXACT,
    exact_cap: int = EXACT_CAP_DEFAULT,
) -> Prob:
    """W(n, m) under an (r, d) block structure.

    Boundary states resolve without any table build; interior states are
    evaluated through a strip table capped at m, so single lookups at
    large n stay cheap.  With rounds (2, 1) the result is identical to
    :func:`win_prob` (same fill, same rationals).
    """
    state = validate_state(GameState(*state))
    rounds = validate_rounds(RoundStructure(*rounds))
    outcome = classify(state, rounds)
    if outcome.kind is not Outcome.INTERIOR:
        return outcome.value if backend == EXACT else float(outcome.value)
    if backend not in BACKENDS:
        raise InvalidParams(f"backend must be one of {BACKENDS}, got {backend!r}")
    n, m = state
    table = build_table(n + m, rounds, backend, m_cap=m, exact_cap=exact_cap)
    return table.get(n, m)


def win_prob(state: GameState, backend: str = EXACT, exact_cap: int = EXACT_CAP_DEFAULT) -> Prob:
    """W(n, m) for the classic day/night game."""
    return win_prob_general(state, CLASSIC, backend=backend, exact_cap=exact_cap)


def _child_value(table: WinTable, n: int, m: int) -> Prob:
    outcome = classify(GameState(n, m), table.rounds)
    if outcome.kind is not Outcome.INTERIOR:
        value = outcome.value
        return value if table.backend == EXACT else float(value)
    return table.get(n, m)


def residual(table: WinTable, state: GameState) -> Prob:
    """W(n,m) minus its recursion expansion from the table's children.

    Exactly zero on exact tables by construction; within 1e-12 on float
    tables.  Raises MissingEntry for non-interior states or when a child
    lies outside the table.
    """
    state = GameState(*state)
    outcome = classify(state, table.rounds)
    if outcome.kind is not Outcome.INTERIOR:
        raise MissingEntry(
            f"{tuple(state)} is a boundary state ({outcome.kind.value}); "
            "the recursion identity only constrains interior states"
        )
    n, m = state
    s = n + m
    r, d = table.rounds
    w = table.get(n, m)
    c1 = _child_value(table, n - r, m)
    c2 = _child_value(table, n - r + d, m - d)
    if table.backend == EXACT:
        return w - (Fraction(n, s) * c1 + Fraction(m, s) * c2)
    return w - (n * c1 + m * c2) / s
