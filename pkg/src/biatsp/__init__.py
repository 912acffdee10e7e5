"""Pareto-set approximation and reduction for the bicriteria asymmetric TSP."""

from .instance import Instance, Tour, evaluate
from .dominance import Front, dominates, pareto_filter

__all__ = ["Instance", "Tour", "evaluate", "Front", "dominates", "pareto_filter"]
