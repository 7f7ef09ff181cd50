"""Recursion tables against an independent game-process enumerator.

The enumerator below is the trust anchor for every derived value in the
suite: it walks the literal day/night process (uniform day elimination,
absorption checked after each kill, night claims a civilian) in exact
rationals, sharing no code or recurrence shape with the table fill.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from mafia_odds import (
    CLASSIC,
    EXACT,
    FLOAT,
    GameState,
    InvalidParams,
    InvalidRounds,
    InvalidState,
    MissingEntry,
    ResourceLimit,
    RoundStructure,
    build_table,
    residual,
    win_prob,
    win_prob_general,
)


@lru_cache(maxsize=None)
def game_process_value(n: int, m: int) -> Fraction:
    """Mafia-win probability of the literal classic game process."""
    if m <= 0:
        return Fraction(0)
    if n < m:
        return Fraction(1)
    total = n + m
    # Day vote removed a mafia member (probability m/total).
    if m - 1 == 0:
        after_mafia = Fraction(0)
    elif n - 1 < m - 1:
        after_mafia = Fraction(1)
    else:
        after_mafia = game_process_value(n - 1, m - 1)  # night claims a civilian
    # Day vote removed a civilian (probability n/total).
    if n - 1 < m:
        after_civilian = Fraction(1)
    elif n - 2 < m:
        after_civilian = Fraction(1)
    else:
        after_civilian = game_process_value(n - 2, m)
    return Fraction(m, total) * after_mafia + Fraction(n, total) * after_civilian


KNOWN_VALUES = {
    (1, 1): Fraction(1, 2),
    (2, 1): Fraction(2, 3),
    (3, 1): Fraction(3, 8),
    (4, 1): Fraction(8, 15),
    (2, 2): Fraction(3, 4),
    (3, 2): Fraction(13, 15),
    (4, 2): Fraction(5, 8),
}


def test_enumerator_reproduces_known_values():
    for state, expected in KNOWN_VALUES.items():
        assert game_process_value(*state) == expected, state


def test_win_prob_matches_enumerator_exhaustively():
    for total in range(1, 15):
        for m in range(0, total + 1):
            n = total - m
            assert win_prob(GameState(n, m)) == game_process_value(n, m), (n, m)


def test_win_prob_known_values():
    for state, expected in KNOWN_VALUES.items():
        assert win_prob(GameState(*state)) == expected


def test_win_prob_boundaries():
    assert win_prob(GameState(7, 0)) == 0
    assert win_prob(GameState(0, 4)) == 1
    assert win_prob(GameState(2, 5)) == 1


def test_win_prob_float_backend():
    assert win_prob(GameState(2, 1), backend=FLOAT) == pytest.approx(2 / 3, abs=1e-15)
    assert isinstance(win_prob(GameState(2, 1), backend=FLOAT), float)


@pytest.mark.parametrize("bad", [(0, 0), (-1, 2), (3, -1)])
def test_win_prob_invalid_states(bad):
    with pytest.raises(InvalidState):
        win_prob(GameState(*bad))


def test_win_prob_invalid_backend():
    with pytest.raises(InvalidParams):
        win_prob(GameState(3, 1), backend="decimal")


def test_general_hand_expansions():
    three_one = RoundStructure(3, 1)
    assert win_prob_general(GameState(3, 1), three_one) == Fraction(3, 4)
    # (1,1) is interior for non-classic rounds yet still resolves to 1/2:
    # both children absorb, one to each side.
    assert win_prob_general(GameState(1, 1), three_one) == Fraction(1, 2)
    assert win_prob_general(GameState(2, 1), three_one) == Fraction(2, 3)
    assert win_prob_general(GameState(7, 2), three_one) == Fraction(22, 27)


def test_general_mafia_majority_any_rounds():
    for rounds in [(2, 1), (3, 1), (5, 2), (7, 3)]:
        assert win_prob_general(GameState(3, 9), RoundStructure(*rounds)) == 1


@pytest.mark.parametrize("bad", [(2, 2), (1, 1), (3, 4), (4, 0)])
def test_general_invalid_rounds(bad):
    with pytest.raises(InvalidRounds):
        win_prob_general(GameState(5, 2), RoundStructure(*bad))


def test_general_reduces_to_classic():
    for total in range(1, 41):
        for m in range(0, total + 1):
            state = GameState(total - m, m)
            assert win_prob_general(state, CLASSIC) == win_prob(state), state


def test_build_table_small_entries():
    table = build_table(3, CLASSIC, EXACT)
    assert table.get(2, 1) == Fraction(2, 3)
    assert table.get(1, 2) == 1
    assert table.get(3, 0) == 0
    assert len(table) == 3 * 6 // 2  # 9 states for cap 3


def test_build_table_cap_100_counts(classic_exact_100):
    assert len(classic_exact_100) == 5150
    states = list(classic_exact_100.states())
    assert len(states) == 5150
    assert states[0] == (1, 0) and states[1] == (0, 1)


def test_build_table_boundary_only_cap():
    table = build_table(1, CLASSIC, EXACT)
    assert list(table.items()) == [((1, 0), Fraction(0)), ((0, 1), Fraction(1))]


def test_exact_resource_limit():
    with pytest.raises(ResourceLimit):
        build_table(201, CLASSIC, EXACT)
    with pytest.raises(ResourceLimit):
        build_table(1000, CLASSIC, EXACT)  # full triangle far beyond the budget
    # the same cap fits once the budget is raised or the strip is thin
    build_table(201, CLASSIC, EXACT, exact_cap=201)
    build_table(1000, CLASSIC, EXACT, m_cap=10)


def test_strip_matches_full_table(classic_exact_200):
    strip = build_table(200, CLASSIC, EXACT, m_cap=3)
    for total in range(1, 201):
        for m in range(0, min(3, total) + 1):
            n = total - m
            assert strip.get(n, m) == classic_exact_200.get(n, m)


def test_table_lookup_errors(classic_exact_100):
    with pytest.raises(MissingEntry):
        classic_exact_100.get(101, 0)
    strip = build_table(50, CLASSIC, EXACT, m_cap=2)
    with pytest.raises(MissingEntry):
        strip.get(10, 3)


def test_values_lie_in_unit_interval(classic_exact_200):
    assert all(0 <= value <= 1 for _, value in classic_exact_200.items())


def test_float_backend_agrees_with_exact(classic_exact_200):
    table_f = build_table(200, CLASSIC, FLOAT)
    worst = max(
        abs(float(value) - table_f.get(*state)) for state, value in classic_exact_200.items()
    )
    assert worst <= 1e-9


def test_float_general_rounds_agree():
    rounds = RoundStructure(3, 1)
    table_e = build_table(60, rounds, EXACT)
    table_f = build_table(60, rounds, FLOAT)
    worst = max(abs(float(v) - table_f.get(*s)) for s, v in table_e.items())
    assert worst <= 1e-12


def test_residual_exact_zero(classic_exact_100):
    assert residual(classic_exact_100, GameState(4, 2)) == 0
    for total in range(2, 101):
        for m in range(1, total // 2 + 1):
            state = GameState(total - m, m)
            if state == (1, 1):
                continue
            assert residual(classic_exact_100, state) == 0, state


def test_residual_float_tolerance():
    table = build_table(80, CLASSIC, FLOAT)
    assert abs(residual(table, GameState(5, 2))) <= 1e-12
    worst = max(
        abs(residual(table, GameState(total - m, m)))
        for total in range(2, 81)
        for m in range(1, total // 2 + 1)
        if (total - m, m) != (1, 1)
    )
    assert worst <= 1e-12


def test_residual_boundary_states_rejected(classic_exact_100):
    with pytest.raises(MissingEntry):
        residual(classic_exact_100, GameState(1, 2))
    with pytest.raises(MissingEntry):
        residual(classic_exact_100, GameState(5, 0))
    with pytest.raises(MissingEntry):
        residual(classic_exact_100, GameState(1, 1))


def test_residual_general_rounds():
    table = build_table(40, RoundStructure(3, 1), EXACT)
    for total in range(2, 41):
        for m in range(1, total // 2 + 1):
            assert residual(table, GameState(total - m, m)) == 0


@settings(max_examples=60)
@given(st.integers(min_value=2, max_value=60))
def test_residual_random_interior(total):
    table = build_table(60, CLASSIC, EXACT)
    for m in range(1, total // 2 + 1):
        state = GameState(total - m, m)
        if state == (1, 1):
            continue
        assert residual(table, state) == 0


def test_monotone_in_same_parity_directions(classic_exact_200):
    """Parity-respecting monotonicity holds exhaustively to population 200."""
    t = classic_exact_200
    for state, value in t.items():
        n, m = state
        if m >= 1 and n >= m and (n + 2, m) in t:
            assert t.get(n + 2, m) <= value, ("n+2", state)
        if m >= 1 and n >= m and (n, m + 2) in t:
            assert t.get(n, m + 2) >= value, ("m+2", state)
        if m >= 1 and n >= m and (n + 1, m + 1) in t:
            assert t.get(n + 1, m + 1) >= value, ("diag", state)


def test_single_step_monotonicity_fails_by_parity():
    """The one-step variants are genuinely false; pin the counterexamples.

    Adding one civilian can help the mafia (the even-n chain ends at the
    mafia-win boundary, the odd chain at the coin flip), and adding one
    mafia member can hurt it near parity.  Both facts are re-derived by
    the independent enumerator.
    """
    assert game_process_value(4, 1) > game_process_value(3, 1)
    assert win_prob(GameState(4, 1)) == Fraction(8, 15) > win_prob(GameState(3, 1)) == Fraction(3, 8)
    assert game_process_value(4, 4) < game_process_value(4, 3)
    assert win_prob(GameState(4, 4)) == Fraction(15, 16) < win_prob(GameState(4, 3)) == Fraction(33, 35)
