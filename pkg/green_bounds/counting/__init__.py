"""Hyperbolic lattice point counts and their certified suprema."""

from green_bounds.counting.grid_evaluator import GridConfig, GridEvaluator
from green_bounds.counting.point_counting import (
    CountCertificate,
    count_orbit,
    count_orbit_bruteforce,
    singular_sum,
    sup_count_Y0,
)

__all__ = [
    "CountCertificate",
    "GridConfig",
    "GridEvaluator",
    "count_orbit",
    "count_orbit_bruteforce",
    "singular_sum",
    "sup_count_Y0",
]
