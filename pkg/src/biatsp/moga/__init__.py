"""NSGA-II with Pareto-aware crossovers for the bicriteria ATSP."""

from .engine import MogaConfig, RunReport, run
from .operators import (
    DEC,
    DPX,
    dec_pr_crossover,
    dpx_pr_crossover,
    recombine,
    shift_mutation,
    three_opt_jump,
    tournament_select,
)
from .seeding import assignment_patch, seed_population

__all__ = [
    "DEC", "DPX", "MogaConfig", "RunReport", "run", "assignment_patch", "seed_population",
    "dec_pr_crossover", "dpx_pr_crossover", "recombine", "shift_mutation", "three_opt_jump",
    "tournament_select",
]
