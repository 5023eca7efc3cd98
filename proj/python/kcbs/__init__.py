"""Pentagram (KCBS) contextuality toolkit.

Thin Python layer over the C++ core: geometry, chart enumeration, exact
hidden-variable bounds, quantum probabilities and Monte Carlo simulation.
"""

import json as _json

from ._core import (
    __version__,
    biased_marginals,
    build_pentagram,
    chsh_correlator,
    classify,
    enumerate_charts,
    is_valid_chart,
    joint_distribution,
    klyachko_sum,
    max_chsh,
    mixture_marginal,
    pentagon_edge_joint,
    pentagon_sum_bounds,
    pentagon_sum_quantum,
    run_trials,
    single_particle_klyachko_sum,
    solve_marginal_mixtures,
)
from ._core import run_command as _run_command


def run_command(command, **options):
    """Run a CLI command and return ``(report_dict, ok)``."""
    text, ok = _run_command(command, options)
    return _json.loads(text), ok


__all__ = [
    "__version__",
    "biased_marginals",
    "build_pentagram",
    "chsh_correlator",
    "classify",
    "enumerate_charts",
    "is_valid_chart",
    "joint_distribution",
    "klyachko_sum",
    "max_chsh",
    "mixture_marginal",
    "pentagon_edge_joint",
    "pentagon_sum_bounds",
    "pentagon_sum_quantum",
    "run_command",
    "run_trials",
    "single_particle_klyachko_sum",
    "solve_marginal_mixtures",
]
