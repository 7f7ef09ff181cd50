"""Session-scoped fixtures: exact tables are built once and shared."""

from __future__ import annotations

import pytest

from mafia_odds import CLASSIC, EXACT, build_table


@pytest.fixture(scope="session")
def classic_exact_100():
    return build_table(100, CLASSIC, EXACT)


@pytest.fixture(scope="session")
def classic_exact_200():
    return build_table(200, CLASSIC, EXACT)
