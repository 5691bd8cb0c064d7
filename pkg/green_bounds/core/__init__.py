"""Hyperbolic geometry, congruence subgroups and special functions."""

from green_bounds.core.hyperbolic import (
    Moebius,
    UhpPoint,
    free_green_L,
    hyperbolic_distance,
    mobius_apply,
    point_pair_invariant,
)
from green_bounds.core.modular_group import CuspData, CuspEpsilons, Family, GroupSpec
from green_bounds.core.shc_transform import RadialKernel, legendre_P, shc_transform

__all__ = [
    "CuspData",
    "CuspEpsilons",
    "Family",
    "GroupSpec",
    "Moebius",
    "RadialKernel",
    "UhpPoint",
    "free_green_L",
    "hyperbolic_distance",
    "legendre_P",
    "mobius_apply",
    "point_pair_invariant",
    "shc_transform",
]
