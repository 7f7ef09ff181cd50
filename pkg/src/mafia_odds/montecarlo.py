"""Seeded Monte Carlo simulation of full games, cross-validating the DP values.

Reproducibility protocol: every estimate seeds a fresh PCG64 stream
(``numpy.random.default_rng(seed)``) and pre-draws uniforms in a fixed
layout — per-trial rows for state/block fidelity (drawn in chunks of
``CHUNK_TRIALS`` consecutive trials), per-round matrices for vote
fidelity.  Trial t always consumes the same draws regardless of kernel
backend or scheduling, so identical (state, config) pairs reproduce
identical outcome sequences bit for bit.

Fidelity levels:
  * ``state``: the day round eliminates a uniformly random player (a
    mafia member with probability m/(n+m)); under non-classic rounds the
    compound (r, d)-block step is simulated instead, matching the
    generalized recursion's semantics (no mid-block absorption).
  * ``vote``: classic rounds only; each alive player casts one vote for
    a uniformly random other player, the max-vote player is eliminated,
    ties broken uniformly among the max-vote receivers.  By symmetry the
    eliminated player is uniform among the alive, so vote-level and
    state-level games estimate the same quantity; seats are canonically
    ordered civilians first, which is sound by exchangeability.

Note: at n = m a coordinated mafia bloc vote would win deterministically;
the model deliberately keeps the fully randomized strategies, under which
the recursion's uniform elimination applies even at parity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .core import (
    CLASSIC,
    GameState,
    InvalidParams,
    RoundStructure,
    validate_rounds,
    validate_state,
)

STATE = "state"
VOTE = "vote"
FIDELITIES = (STATE, VOTE)

#: Trials simulated per pre-drawn uniform matrix (memory/layout unit).
CHUNK_TRIALS = 1 << 16


class Winner(Enum):
    MAFIA = "mafia"
    CIVILIANS = "civilians"


@dataclass(frozen=True)
class SimConfig:
    """Trial count, seed and game model of one simulation run."""

    trials: int
    seed: int
    fidelity: str = STATE
    rounds: RoundStructure = CLASSIC

    def __post_init__(self):
        if not isinstance(self.trials, int) or self.trials < 1:
            raise InvalidParams(f"trials must be an integer >= 1, got {self.trials!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise InvalidParams(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.fidelity not in FIDELITIES:
            raise InvalidParams(f"fidelity must be one of {FIDELITIES}, got {self.fidelity!r}")
        object.__setattr__(self, "rounds", validate_rounds(RoundStructure(*self.rounds)))
        if self.fidelity == VOTE and tuple(self.rounds) != CLASSIC:
            raise InvalidParams("vote-level fidelity is defined for the classic rounds (2, 1) only")


@dataclass(frozen=True)
class SimResult:
    """Mafia-win count, estimate and binomial standard error."""

    wins: int
    trials: int
    estimate: float
    stderr: float

    @classmethod
    def from_wins(cls, wins: int, trials: int) -> "SimResult":
        p = wins / trials
        return cls(wins, trials, p, math.sqrt(p * (1.0 - p) / trials))


def _state_steps(total: int) -> int:
    return total // 2 + 1


def _block_steps(total: int, r: int) -> int:
    return total // r + 1


def estimate(state: GameState, config: SimConfig) -> SimResult:
    """Run config.trials independent games; deterministic given (state, config)."""
    state = validate_state(GameState(*state))
    n, m = state
    rng = np.random.default_rng(config.seed)
    if config.fidelity == VOTE:
        out = _vote_games(n, m, config.trials, rng)
        return SimResult.from_wins(int(out.sum()), config.trials)

    classic = tuple(config.rounds) == CLASSIC
    r = config.rounds.r
    steps = _state_steps(n + m) if classic else _block_steps(n + m, r)
    wins = 0
    done = 0
    while done < config.trials:
        size = min(CHUNK_TRIALS, config.trials - done)
        u = rng.random((size, steps))
        if classic:
            out = kernels.run_state_games(n, m, u)
        else:
            out = kernels.run_block_games(n, m, r, config.rounds.d, u)
        wins += int(out.sum())
        done += size
    return SimResult.from_wins(wins, config.trials)


def play_game(state: GameState, config: SimConfig, stream: np.random.Generator) -> Winner:
    """Play a single game, drawing from the caller's stream.

    Runs the same kernels as :func:`estimate` on one-trial matrices, so
    single games and batches share transition semantics exactly.
    """
    state = validate_state(GameState(*state))
    n, m = state
    if config.fidelity == VOTE:
        out = _vote_games(n, m, 1, stream)
        return Winner.MAFIA if out[0] else Winner.CIVILIANS
    classic = tuple(config.rounds) == CLASSIC
    if classic:
        u = stream.random((1, _state_steps(n + m)))
        out = kernels.run_state_games(n, m, u)
    else:
        r, d = config.rounds
        u = stream.random((1, _block_steps(n + m, r)))
        out = kernels.run_block_games(n, m, r, d, u)
    return Winner.MAFIA if out[0] else Winner.CIVILIANS


def _vote_games(n0: int, m0: int, trials: int, rng: np.random.Generator) -> np.ndarray:
    """Classic games at vote fidelity, all trials advanced in lockstep.

    Day plus night always remove exactly two players from a live game, so
    the alive count is shared across trials; absorbed trials keep their
    (unused) draw slots, which keeps the layout schedule-independent.
    """
    out = np.zeros(trials, dtype=np.uint8)
    if m0 == 0:
        return out
    if n0 < m0:
        out[:] = 1
        return out
    n = np.full(trials, n0, dtype=np.int64)
    m = np.full(trials, m0, dtype=np.int64)
    active = np.ones(trials, dtype=bool)
    alive = n0 + m0
    while active.any():
        u_votes = rng.random((trials, alive))
        tie_u = rng.random(trials)
        seats = kernels.vote_day_seats(u_votes, tie_u)
        day_maf = active & (seats >= n)  # seats [0, n) are civilians
        day_civ = active & ~day_maf

        m = np.where(day_maf, m - 1, m)
        active &= ~(day_maf & (m == 0))
        n = np.where(day_civ, n - 1, n)
        lost = day_civ & (n < m)
        out[lost] = 1
        active &= ~lost

        # night kills one civilian in every game still running
        n = np.where(active, n - 1, n)
        lost = active & (n < m)
        out[lost] = 1
        active &= ~lost
        alive -= 2
        assert alive >= 2 or not active.any()
    return out


@dataclass(frozen=True)
class EliminationStats:
    """Per-seat elimination tallies of a symmetric day round."""

    counts: np.ndarray
    freqs: np.ndarray
    chi2: float
    df: int
    pvalue: float


def elimination_distribution(players: int, trials: int, seed: int) -> EliminationStats:
    """Empirical check that the vote-level day round eliminates uniformly.

    Simulates one day round among ``players`` symmetric seats ``trials``
    times and returns per-seat frequencies with a chi-square statistic
    against the uniform distribution (df = players - 1).
    """
    if not isinstance(players, int) or players < 2:
        raise InvalidParams(f"players must be an integer >= 2, got {players!r}")
    if not isinstance(trials, int) or trials < 1:
        raise InvalidParams(f"trials must be an integer >= 1, got {trials!r}")
    rng = np.random.default_rng(seed)
    seats = kernels.vote_day_seats(rng.random((trials, players)), rng.random(trials))
    counts = np.bincount(seats, minlength=players)
    expected = trials / players
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    df = players - 1
    from scipy.stats import chi2 as chi2_dist

    return EliminationStats(
        counts=counts,
        freqs=counts / trials,
        chi2=chi2,
        df=df,
        pvalue=float(chi2_dist.sf(chi2, df)),
    )


def chi2_critical(df: int, level: float = 0.999) -> float:
    """Chi-square critical value at the given confidence level."""
    from scipy.stats import chi2 as chi2_dist

    return float(chi2_dist.isf(1.0 - level, df))
