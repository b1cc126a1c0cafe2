"""Supervisory switched-system simulation.

Thin Python layer over the C++ core: threshold and dwell-time helpers, the
pendulum hybrid observer, the Lorenz synchronization table cells, and the
command-line tool.
"""

from ._core import (
    KLExp,
    cli,
    dwell_from_beta,
    gain_from_eigs,
    is_hurwitz,
    optimal_threshold,
    run_lorenz_cell,
    run_pendulum,
    solve_lyapunov_small,
    time_to_level,
)

__all__ = [
    "KLExp",
    "cli",
    "dwell_from_beta",
    "gain_from_eigs",
    "is_hurwitz",
    "optimal_threshold",
    "run_lorenz_cell",
    "run_pendulum",
    "solve_lyapunov_small",
    "time_to_level",
]
