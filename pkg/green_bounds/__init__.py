"""Explicit bounds on canonical Green functions of modular curves."""

from green_bounds.bounds.green_assembly import BoundParams, BoundReport, Interval, regime_bounds
from green_bounds.core.hyperbolic import Moebius, UhpPoint
from green_bounds.core.modular_group import Family, GroupSpec
from green_bounds.errors import GreenBoundsError
from green_bounds.pipeline import PipelineOptions, example_pipeline

__all__ = [
    "BoundParams",
    "BoundReport",
    "Family",
    "GreenBoundsError",
    "GroupSpec",
    "Interval",
    "Moebius",
    "PipelineOptions",
    "UhpPoint",
    "example_pipeline",
    "regime_bounds",
]
