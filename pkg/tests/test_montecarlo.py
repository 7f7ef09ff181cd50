"""Simulation determinism and agreement with the exact recursion."""

from __future__ import annotations

import math

import numpy as np
import pytest

from mafia_odds import (
    GameState,
    InvalidParams,
    InvalidState,
    RoundStructure,
    SimConfig,
    Winner,
    chi2_critical,
    elimination_distribution,
    estimate,
    play_game,
    win_prob,
    win_prob_general,
)


def test_config_validation():
    with pytest.raises(InvalidParams):
        SimConfig(trials=0, seed=1)
    with pytest.raises(InvalidParams):
        SimConfig(trials=10, seed=-1)
    with pytest.raises(InvalidParams):
        SimConfig(trials=10, seed=1, fidelity="exact")
    with pytest.raises(InvalidParams):
        SimConfig(trials=10, seed=1, fidelity="vote", rounds=RoundStructure(3, 1))
    SimConfig(trials=10, seed=2**63, fidelity="vote")  # 64-bit seeds allowed


def test_estimate_deterministic():
    config = SimConfig(trials=20_000, seed=42)
    a = estimate(GameState(10, 3), config)
    b = estimate(GameState(10, 3), config)
    assert a == b
    c = estimate(GameState(10, 3), SimConfig(trials=20_000, seed=43))
    assert c.wins != a.wins  # different stream


def test_estimate_absorbing_states():
    res = estimate(GameState(5, 0), SimConfig(trials=1000, seed=3))
    assert res.wins == 0 and res.estimate == 0.0 and res.stderr == 0.0
    res = estimate(GameState(0, 3), SimConfig(trials=1000, seed=3))
    assert res.wins == 1000 and res.estimate == 1.0


def test_estimate_invalid_state():
    with pytest.raises(InvalidState):
        estimate(GameState(0, 0), SimConfig(trials=10, seed=1))


def test_estimate_chunking_consistent():
    """Chunk boundaries must not change the outcome sequence."""
    import mafia_odds.montecarlo as mc

    config = SimConfig(trials=5_000, seed=11)
    full = estimate(GameState(10, 3), config)
    original = mc.CHUNK_TRIALS
    try:
        mc.CHUNK_TRIALS = 1_024
        chunked = estimate(GameState(10, 3), config)
    finally:
        mc.CHUNK_TRIALS = original
    assert chunked == full


@pytest.mark.parametrize("state", [(2, 1), (3, 1), (2, 2), (10, 3)])
def test_state_level_matches_dp(state):
    config = SimConfig(trials=40_000, seed=7)
    res = estimate(GameState(*state), config)
    dp = float(win_prob(GameState(*state)))
    assert abs(res.estimate - dp) <= 5 * max(res.stderr, 1e-9), state


def test_tie_state_near_half():
    res = estimate(GameState(1, 1), SimConfig(trials=50_000, seed=5))
    assert abs(res.estimate - 0.5) <= 5 * res.stderr


def test_block_fidelity_matches_general_dp():
    rounds = RoundStructure(3, 1)
    res = estimate(GameState(7, 2), SimConfig(trials=40_000, seed=17, rounds=rounds))
    dp = float(win_prob_general(GameState(7, 2), rounds))
    assert dp == pytest.approx(22 / 27, abs=1e-12)
    assert abs(res.estimate - dp) <= 5 * res.stderr


def test_vote_level_matches_state_level():
    # Uniform elimination makes both fidelities estimators of the same W.
    state = GameState(10, 3)
    vote = estimate(state, SimConfig(trials=100_000, seed=23, fidelity="vote"))
    flat = estimate(state, SimConfig(trials=100_000, seed=24, fidelity="state"))
    combined = math.hypot(vote.stderr, flat.stderr)
    assert abs(vote.estimate - flat.estimate) <= 5 * combined


def test_vote_level_deterministic():
    config = SimConfig(trials=10_000, seed=31, fidelity="vote")
    assert estimate(GameState(4, 2), config) == estimate(GameState(4, 2), config)


def test_play_game_boundaries():
    stream = np.random.default_rng(0)
    config = SimConfig(trials=1, seed=0)
    assert play_game(GameState(0, 3), config, stream) is Winner.MAFIA
    assert play_game(GameState(4, 0), config, stream) is Winner.CIVILIANS


def test_play_game_all_fidelities_run():
    stream = np.random.default_rng(12)
    assert play_game(GameState(6, 2), SimConfig(trials=1, seed=0), stream) in Winner
    assert play_game(
        GameState(6, 2), SimConfig(trials=1, seed=0, fidelity="vote"), stream
    ) in Winner
    assert play_game(
        GameState(9, 2), SimConfig(trials=1, seed=0, rounds=RoundStructure(3, 1)), stream
    ) in Winner


def test_elimination_distribution_uniform():
    stats = elimination_distribution(5, 20_000, seed=101)
    assert stats.counts.sum() == 20_000
    assert stats.df == 4
    assert np.allclose(stats.freqs, 0.2, atol=0.02)
    assert stats.chi2 < chi2_critical(4, 0.999)
    assert 0 <= stats.pvalue <= 1


def test_elimination_distribution_two_and_three_players():
    stats = elimination_distribution(2, 10_000, seed=55)
    assert np.allclose(stats.freqs, 0.5, atol=0.03)
    stats = elimination_distribution(3, 30_000, seed=56)
    assert np.allclose(stats.freqs, 1 / 3, atol=0.02)


def test_elimination_distribution_validation():
    with pytest.raises(InvalidParams):
        elimination_distribution(1, 100, seed=0)
    with pytest.raises(InvalidParams):
        elimination_distribution(5, 0, seed=0)


def test_chi2_critical_reference_value():
    # 99.9% quantile at four degrees of freedom, the classic table entry.
    assert chi2_critical(4, 0.999) == pytest.approx(18.4668, abs=5e-4)
