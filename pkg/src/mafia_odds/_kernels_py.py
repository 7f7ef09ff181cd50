"""Pure numpy Monte Carlo playout kernels (reference semantics).

The compiled extension in ``_kernels.pyx`` implements exactly these
transition rules with the same IEEE-754 comparisons on the same
pre-drawn uniforms, so for identical inputs both backends return
identical outcome arrays.  Keep the two files in lockstep.

Shared conventions:
  * ``u`` matrices hold uniforms in [0, 1); row t belongs to trial t and
    is consumed left to right, one entry per day round (state games) or
    per block (block games).
  * outcome arrays are uint8 with 1 = mafia win, 0 = civilians win.
  * day votes hit a mafia member with probability m/(n+m), tested as
    ``u * (n + m) < m``; block steps take the all-civilian branch with
    probability n/(n+m), tested as ``u * (n + m) < n``.
"""

from __future__ import annotations

import numpy as np


def run_state_games(n0: int, m0: int, u: np.ndarray) -> np.ndarray:
    """Play classic day/night games from (n0, m0), one uniform per iteration.

    Each iteration: the day vote removes a mafia member (probability
    m/(n+m)) or a civilian, with absorption checks after the day kill and
    again after the night kill of one civilian.
    """
    trials, steps = u.shape
    out = np.zeros(trials, dtype=np.uint8)
    if m0 == 0:
        return out
    if n0 < m0:
        out[:] = 1
        return out
    n = np.full(trials, n0, dtype=np.int64)
    m = np.full(trials, m0, dtype=np.int64)
    active = np.ones(trials, dtype=bool)
    for k in range(steps):
        if not active.any():
            break
        uk = u[:, k]
        day_maf = active & (uk * (n + m) < m)
        day_civ = active & ~day_maf

        # Day vote removed a mafia member; night still claims a civilian
        # unless the mafia is already extinct.
        m = np.where(day_maf, m - 1, m)
        active &= ~(day_maf & (m == 0))
        night = day_maf & active
        n = np.where(night, n - 1, n)
        lost = night & (n < m)
        out[lost] = 1
        active &= ~lost

        # Day vote removed a civilian, then the night removes another.
        n = np.where(day_civ, n - 1, n)
        lost = day_civ & (n < m)
        out[lost] = 1
        active &= ~lost
        night = day_civ & active
        n = np.where(night, n - 1, n)
        lost = night & (n < m)
        out[lost] = 1
        active &= ~lost
    assert not active.any(), "uniform matrix too narrow for absorption"
    return out


def run_block_games(n0: int, m0: int, r: int, d: int, u: np.ndarray) -> np.ndarray:
    """Play generalized (r, d)-block games, one uniform per compound block.

    A block removes r civilians (probability n/(n+m)) or d mafias plus
    r-d civilians; boundaries are checked only between blocks, mafia
    extinction taking precedence over the majority rule.
    """
    trials, steps = u.shape
    out = np.zeros(trials, dtype=np.uint8)
    if m0 <= 0:
        return out
    if n0 < m0:
        out[:] = 1
        return out
    n = np.full(trials, n0, dtype=np.int64)
    m = np.full(trials, m0, dtype=np.int64)
    active = np.ones(trials, dtype=bool)
    for k in range(steps):
        if not active.any():
            break
        uk = u[:, k]
        civs_branch = active & (uk * (n + m) < n)
        mafs_branch = active & ~civs_branch
        n = np.where(civs_branch, n - r, n)
        n = np.where(mafs_branch, n - (r - d), n)
        m = np.where(mafs_branch, m - d, m)
        active &= ~(active & (m <= 0))
        lost = active & (n < m)
        out[lost] = 1
        active &= ~lost
    assert not active.any(), "uniform matrix too narrow for absorption"
    return out


def vote_day_seats(u_votes: np.ndarray, tie_u: np.ndarray) -> np.ndarray:
    """One vote-level day round per trial; returns the eliminated seat.

    Every voter i picks a uniformly random other seat (floor of
    u * (alive-1), skipping itself); the seat with the most votes is
    eliminated, ties broken uniformly among the max-vote seats via one
    extra uniform per trial.
    """
    trials, alive = u_votes.shape
    voters = np.arange(alive, dtype=np.int64)
    raw = (u_votes * (alive - 1)).astype(np.int64)
    targets = raw + (raw >= voters)
    offsets = np.arange(trials, dtype=np.int64)[:, None] * alive
    counts = np.bincount(
        (targets + offsets).ravel(), minlength=trials * alive
    ).reshape(trials, alive)
    top = counts.max(axis=1)
    is_top = counts == top[:, None]
    n_top = is_top.sum(axis=1)
    rank = (tie_u * n_top).astype(np.int64)
    cum = np.cumsum(is_top, axis=1)
    picked = is_top & (cum == (rank + 1)[:, None])
    return picked.argmax(axis=1).astype(np.int64)
