"""Generalized Legendre functions and the Selberg--Harish-Chandra transform.

P_{s,k}(u) = (2/(u + 1))^s F(s - k/2, s + k/2; 1; (u - 1)/(u + 1)) and
h_theta^(k)(s) = 2 pi int_1^U theta(u) P_{s,k}(u) du for radial kernels theta.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DomainError, NonConvergentSeriesError
from .quadrature import integrate_adaptive_simpson

logger = logging.getLogger(__name__)

MAX_SERIES_TERMS = 2000
DEFAULT_SERIES_TOL = 1e-15


class KernelKind(str, Enum):
    INDICATOR = "indicator"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class RadialKernel:
    """A compactly supported radial kernel theta on [1, U].

    Either the indicator function of [1, a], or the piecewise-linear
    interpolant of (knots, values) which vanishes beyond the last knot.
    """
    kind: KernelKind
    a: Optional[float] = None
    knots: Tuple[float, ...] = ()
    values: Tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", KernelKind(self.kind))
        if self.kind is KernelKind.INDICATOR:
            if self.a is None or not self.a > 1.0:
                raise DomainError(f"indicator kernel requires a > 1, got {self.a}")
            return
        if len(self.knots) < 2 or len(self.knots) != len(self.values):
            raise DomainError("sampled kernel needs matching knots and values (at least two)")
        if self.knots[0] != 1.0:
            raise DomainError(f"sampled kernel must start at u=1, got {self.knots[0]}")
        if any(b <= a for a, b in zip(self.knots, self.knots[1:])):
            raise DomainError("sampled kernel knots must be strictly increasing")
        if self.values[-1] != 0.0:
            raise DomainError("sampled kernel must vanish at its last knot")

    @classmethod
    def indicator(cls, a: float) -> "RadialKernel":
        return cls(KernelKind.INDICATOR, a=a)

    @classmethod
    def sampled(cls, knots: Sequence[float], values: Sequence[float]) -> "RadialKernel":
        return cls(KernelKind.SAMPLED, knots=tuple(map(float, knots)), values=tuple(map(float, values)))

    @property
    def support_upper(self) -> float:
        return self.a if self.kind is KernelKind.INDICATOR else self.knots[-1]

    def breakpoints(self) -> List[float]:
        """Points between which the kernel is smooth."""
        if self.kind is KernelKind.INDICATOR:
            return [1.0, self.a]
        return list(self.knots)

    def __call__(self, u: float) -> float:
        if self.kind is KernelKind.INDICATOR:
            return 1.0 if 1.0 <= u <= self.a else 0.0
        if u < 1.0 or u > self.knots[-1]:
            return 0.0
        return float(np.interp(u, self.knots, self.values))


def legendre_P(s: float, k: float, u: float, tol: float = DEFAULT_SERIES_TOL) -> float:
    """Evaluate P_{s,k}(u) by summing the hypergeometric series.

    The series in t = (u - 1)/(u + 1) < 1 is summed until a term drops below
    tol * (1 + |partial sum|); it terminates exactly when s - k/2 or s + k/2
    is a non-positive integer.

    Raises:
        DomainError: If u < 1 or tol <= 0.
        NonConvergentSeriesError: If MAX_SERIES_TERMS terms do not reach tol.
    """
    if not u >= 1.0:
        raise DomainError(f"Legendre function requires u >= 1, got {u}")
    if not tol > 0.0:
        raise DomainError(f"series tolerance must be positive, got {tol}")
    alpha, beta = s - k / 2.0, s + k / 2.0
    t = (u - 1.0) / (u + 1.0)
    total, term = 1.0, 1.0
    for n in range(MAX_SERIES_TERMS):
        term *= (alpha + n) * (beta + n) / ((n + 1.0) * (n + 1.0)) * t
        total += term
        if term == 0.0 or abs(term) < tol * (1.0 + abs(total)):
            return (2.0 / (u + 1.0)) ** s * total
    logger.error("Hypergeometric series for (s=%s, k=%s, u=%s) did not converge", s, k, u)
    raise NonConvergentSeriesError(
        f"non-convergent parameters: s={s}, k={k}, u={u} after {MAX_SERIES_TERMS} terms"
    )


def _segment_integrand(theta: RadialKernel, s: float, k: float, lo: float, hi: float, tol: float):
    if theta.kind is KernelKind.INDICATOR:
        return lambda u: legendre_P(s, k, u, tol)
    # theta is linear on [lo, hi]
    v_lo, v_hi = theta(lo), theta(hi)
    slope = (v_hi - v_lo) / (hi - lo)
    return lambda u: (v_lo + slope * (u - lo)) * legendre_P(s, k, u, tol)


def shc_transform(
    theta: RadialKernel,
    s: float,
    k: float,
    quad_tol: float = 1e-10,
    series_tol: float = DEFAULT_SERIES_TOL,
) -> float:
    """2 pi times the integral of theta(u) P_{s,k}(u) over [1, U].

    The integral is split at the kernel breakpoints and each piece is
    integrated by adaptive Simpson with a share of quad_tol proportional to
    its length.
    """
    if not quad_tol > 0.0:
        raise DomainError(f"quadrature tolerance must be positive, got {quad_tol}")
    points = theta.breakpoints()
    length = points[-1] - points[0]
    total = 0.0
    for lo, hi in zip(points, points[1:]):
        integrand = _segment_integrand(theta, s, k, lo, hi, series_tol)
        value, _ = integrate_adaptive_simpson(integrand, lo, hi, tol=quad_tol * (hi - lo) / length)
        total += value
    return 2.0 * math.pi * total


def shc_weight2_indicator(a: float) -> float:
    """Closed form 4 pi log((a + 1)/2) of the weight-2 transform of the indicator of [1, a] at s = 0."""
    if not a > 1.0:
        logger.error("shc_weight2_indicator called with a=%s", a)
        raise DomainError(f"cutoff must exceed 1, got {a}")
    return 4.0 * math.pi * math.log((a + 1.0) / 2.0)
