"""Bounds on F_Gamma and assembly of the Green function bounds."""

from green_bounds.bounds.f_bound import ExtensionMode, FBoundResult, compute_f_bounds
from green_bounds.bounds.green_assembly import (
    BoundParams,
    BoundReport,
    Interval,
    global_sup_bound,
    regime_bounds,
)

__all__ = [
    "BoundParams",
    "BoundReport",
    "ExtensionMode",
    "FBoundResult",
    "Interval",
    "compute_f_bounds",
    "global_sup_bound",
    "regime_bounds",
]
