"""Core domain types and boundary rules for the mafia game state space.

A game position is a pair of counts (n civilians, m mafias).  The solvers
in this package never track player identities: day rounds eliminate a
uniformly random player, night rounds eliminate a civilian, so counts are
a sufficient statistic under the randomized strategies.

``classify`` is the single authority on which positions are terminal and
what value they carry.  Every recursion, table fill, verifier and
simulator resolves child positions through it, including the transient
positions with negative counts that the recursions can produce.
"""

from __future__ import annotations

import os
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Union

#: A probability value: exact rational or binary64, depending on backend.
Prob = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)


class MafiaOddsError(Exception):
    """Base class for all package errors."""


class InvalidState(MafiaOddsError):
    """Game state outside the user-facing domain (e.g. (0,0) or negative counts)."""


class InvalidRounds(MafiaOddsError):
    """Round structure violating r > d >= 1."""


class InvalidParams(MafiaOddsError):
    """Parameter outside an operation's stated domain."""


class ResourceLimit(MafiaOddsError):
    """Exact-backend table request above the configured size budget."""


class MissingEntry(MafiaOddsError):
    """Table lookup for a state that is absent or not interior."""


class BackendMismatch(MafiaOddsError):
    """Exact verification requested against a float-backed table."""


class EmptyDomain(MafiaOddsError):
    """A scan or fit over a domain that contains no states."""


class GameState(NamedTuple):
    """A point (n civilians, m mafias) in the recursion state space.

    User-facing inputs require n >= 0 and m >= 0.  Recursion-internal
    children may carry negative counts; they are always resolved by a
    boundary rule, never recursed on.
    """

    n: int
    m: int


class RoundStructure(NamedTuple):
    """Block shape of the generalized game: each r rounds hold d day rounds."""

    r: int
    d: int

    @property
    def alpha(self) -> Fraction:
        """Fraction of day rounds d/r; the scaling exponent of the game."""
        return Fraction(self.d, self.r)


#: The classic game: day/night alternation, i.e. 2-round blocks with 1 day round.
CLASSIC = RoundStructure(2, 1)


class Outcome(Enum):
    CIVILIANS_WIN = "civilians_win"
    MAFIA_WINS = "mafia_wins"
    TIE_BASE = "tie_base"
    INTERIOR = "interior"


class BoundaryOutcome(NamedTuple):
    kind: Outcome
    value: Fraction | None


_CIVILIANS_WIN = BoundaryOutcome(Outcome.CIVILIANS_WIN, Fraction(0))
_MAFIA_WINS = BoundaryOutcome(Outcome.MAFIA_WINS, Fraction(1))
_TIE_BASE = BoundaryOutcome(Outcome.TIE_BASE, Fraction(1, 2))
_INTERIOR = BoundaryOutcome(Outcome.INTERIOR, None)


def validate_rounds(rounds: RoundStructure) -> RoundStructure:
    """Check r > d >= 1 and return the structure; raise InvalidRounds otherwise."""
    r, d = rounds
    if not (isinstance(r, int) and isinstance(d, int)):
        raise InvalidRounds(f"round structure must be integer (r, d), got {rounds!r}")
    if d < 1 or d >= r:
        raise InvalidRounds(f"need r > d >= 1, got (r={r}, d={d})")
    return RoundStructure(r, d)


def validate_state(state: GameState) -> GameState:
    """Check a user-facing state: integer counts, n >= 0, m >= 0, not (0,0)."""
    n, m = state
    if not (isinstance(n, int) and isinstance(m, int)):
        raise InvalidState(f"counts must be integers, got {state!r}")
    if n < 0 or m < 0:
        raise InvalidState(f"user-facing states need n >= 0 and m >= 0, got (n={n}, m={m})")
    if n == 0 and m == 0:
        raise InvalidState("the empty game (0, 0) has no value")
    return GameState(n, m)


def classify(state: GameState, rounds: RoundStructure = CLASSIC) -> BoundaryOutcome:
    """Classify a position against the boundary rules, in precedence order.

    1. m <= 0: the mafia is extinct, civilians win (value 0) regardless of n —
       including transient children with n < m <= 0.
    2. n < m: the mafia holds the majority and wins (value 1).
    3. (1, 1) under the classic rounds: the mutual-vote tie, value 1/2.
    4. otherwise the position is interior and must be recursed on.

    Pure function; tolerates the negative transient counts produced by the
    recursions (n down to n - r, m down to m - d).
    """
    n, m = state
    if m <= 0:
        return _CIVILIANS_WIN
    if n < m:
        return _MAFIA_WINS
    if n == 1 and m == 1 and tuple(rounds) == CLASSIC:
        return _TIE_BASE
    return _INTERIOR


def worker_count() -> int:
    """Parallelism cap: MAFIA_ODDS_THREADS if set, else the CPU count.

    Raises InvalidParams for a non-positive or non-integer setting.
    """
    raw = os.environ.get("MAFIA_ODDS_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise InvalidParams(f"MAFIA_ODDS_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise InvalidParams(f"MAFIA_ODDS_THREADS must be a positive integer, got {raw!r}")
    return value
