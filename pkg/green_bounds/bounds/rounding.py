"""Rounding at a fixed number of significant figures.

Upper bounds are rounded up and lower bounds down, so a rounded constant is
still a valid bound.
"""

import math
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal


def _directed(x: float, digits: int, rounding: str) -> float:
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")
    if x == 0 or not math.isfinite(x):
        return x
    # repr is the shortest decimal that reads back as x, and float() is monotone
    exact = Decimal(repr(x))
    quantum = Decimal(1).scaleb(exact.adjusted() - digits + 1)
    return float(exact.quantize(quantum, rounding=rounding))


def round_up_sig(x: float, digits: int = 3) -> float:
    return _directed(x, digits, ROUND_CEILING)


def round_down_sig(x: float, digits: int = 3) -> float:
    return _directed(x, digits, ROUND_FLOOR)


def round_sig(x: float, digits: int = 2) -> float:
    """Round to the nearest value with the given number of significant figures."""
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.{digits}g}")
