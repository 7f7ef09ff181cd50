"""Exact and statistical win-probability engine for the mafia game without detectives.

Evaluates the classic day/night win-probability recursion and its
(r, d)-block generalization with exact-rational and float backends,
verifies sandwich bounds and their supporting inequalities over
exhaustive grids, cross-validates everything with seeded Monte Carlo
simulation, and reproduces the envelope counterexample constructions as
machine-checkable witness reports.
"""

from .bounds import (
    BoundParams,
    ScanReport,
    fit_general_band,
    lower_bound,
    upper_bound,
    verify_theorem2,
)
from .core import (
    BACKENDS,
    CLASSIC,
    EXACT,
    FLOAT,
    BackendMismatch,
    BoundaryOutcome,
    EmptyDomain,
    GameState,
    InvalidParams,
    InvalidRounds,
    InvalidState,
    MafiaOddsError,
    MissingEntry,
    Outcome,
    Prob,
    ResourceLimit,
    RoundStructure,
    classify,
)
from .counterexamples import (
    WitnessCheck,
    WitnessReport,
    claim1_witness,
    example1,
    example2,
    example3,
)
from .dp import (
    EXACT_CAP_DEFAULT,
    WinTable,
    build_table,
    fits_exact_budget,
    residual,
    win_prob,
    win_prob_general,
)
from .inequalities import (
    GridSpec,
    check_concave_ineq,
    check_exponent_ineq,
    check_root_ineq,
    check_square_ineq,
    grid_verify,
)
from .montecarlo import (
    EliminationStats,
    SimConfig,
    SimResult,
    Winner,
    chi2_critical,
    elimination_distribution,
    estimate,
    play_game,
)

__version__ = "0.1.0"

__all__ = [
    "BACKENDS",
    "BackendMismatch",
    "BoundParams",
    "BoundaryOutcome",
    "CLASSIC",
    "EXACT",
    "EXACT_CAP_DEFAULT",
    "EliminationStats",
    "EmptyDomain",
    "FLOAT",
    "GameState",
    "GridSpec",
    "InvalidParams",
    "InvalidRounds",
    "InvalidState",
    "MafiaOddsError",
    "MissingEntry",
    "Outcome",
    "Prob",
    "ResourceLimit",
    "RoundStructure",
    "ScanReport",
    "SimConfig",
    "SimResult",
    "Winner",
    "WinTable",
    "WitnessCheck",
    "WitnessReport",
    "build_table",
    "check_concave_ineq",
    "check_exponent_ineq",
    "check_root_ineq",
    "check_square_ineq",
    "chi2_critical",
    "claim1_witness",
    "classify",
    "elimination_distribution",
    "estimate",
    "example1",
    "example2",
    "example3",
    "fit_general_band",
    "fits_exact_budget",
    "grid_verify",
    "lower_bound",
    "play_game",
    "residual",
    "upper_bound",
    "verify_theorem2",
    "win_prob",
    "win_prob_general",
    "__version__",
]
