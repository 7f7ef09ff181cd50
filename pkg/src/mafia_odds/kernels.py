"""Kernel backend selection: compiled extension when available, numpy fallback.

The choice happens once at import.  Set MAFIA_ODDS_PURE_PYTHON=1 to force
the numpy kernels even when the compiled extension is installed (useful
for benchmarking; see benchmarks/bench_kernels.py).
"""

from __future__ import annotations

import os

if os.environ.get("MAFIA_ODDS_PURE_PYTHON"):
    from . import _kernels_py as _impl

    COMPILED = False
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

        COMPILED = False

BACKEND = "compiled" if COMPILED else "python"

run_state_games = _impl.run_state_games
run_block_games = _impl.run_block_games
vote_day_seats = _impl.vote_day_seats


def get_impl(name: str):
    """Fetch a kernel module by name ("compiled" or "python").

    Raises ImportError when the compiled extension was never built.
    """
    if name == "python":
        from . import _kernels_py

        return _kernels_py
    if name == "compiled":
        from . import _kernels  # raises ImportError if absent

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")
