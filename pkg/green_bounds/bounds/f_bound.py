"""Sup-norm bounds for F_Gamma, the scaled canonical (1,1)-form density.

F_Gamma is never evaluated; everything here produces upper bounds for it
on the interior region Y, on the cusp discs and on the whole curve, and the
resulting bound for zeta_Gamma.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from ..core.modular_group import CuspEpsilons
from ..errors import DomainError, GenusZeroError
from .rounding import round_up_sig

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


class ExtensionMode(str, Enum):
    """How sup_Y F is extended to the cusp discs.

    COARSE uses m_c <= n, WIDTHS the actual widths with max{1, (eps_c/2pi)^2},
    SHARP the actual widths with the two-branch factor.
    """
    COARSE = "coarse"
    WIDTHS = "widths"
    SHARP = "sharp"


@dataclass(frozen=True)
class FBoundResult:
    """Bounds produced from one interior parameter a and point count N."""
    a: float
    N_used: int
    sup_Y: float
    sup_X: float
    zeta: float

    def __post_init__(self):
        if min(self.sup_Y, self.sup_X, self.zeta) < 0:
            raise DomainError("F bounds must be nonnegative")
        if self.sup_Y > self.sup_X:
            raise DomainError(f"sup_Y={self.sup_Y} exceeds sup_X={self.sup_X}")
        if self.zeta > self.sup_X:
            raise DomainError(f"zeta={self.zeta} exceeds sup_X={self.sup_X}")


def f_sup_bound_interior(a: float, N: int) -> float:
    """(a - 1) N / (8 pi log^2((a + 1)/2)), the bound F(z) <= ... from a count N >= N(z, 2a^2 - 1)."""
    if not a > 1.0:
        logger.error("Interior F bound requested with a=%s", a)
        raise DomainError(f"interior parameter a must exceed 1, got {a}")
    if N < 1:
        raise DomainError(f"point count must be >= 1, got {N}")
    return (a - 1.0) * N / (8.0 * math.pi * math.log((a + 1.0) / 2.0) ** 2)


def f_cusp_extension_factor(eps: float) -> float:
    """Factor bounding sup over a cusp disc of F by its boundary supremum.

    (eps y)^2 exp(4pi/eps - 4pi y) on y >= 1/eps peaks at y = 1/(2pi) when
    that lies inside the disc, and at the boundary otherwise.
    """
    if not eps > 0.0:
        raise DomainError(f"eps must be positive, got {eps}")
    if eps <= TWO_PI:
        return 1.0
    return ((eps / TWO_PI) * math.exp(TWO_PI / eps - 1.0)) ** 2


def f_cusp_bound(sup_boundary: float, eps: float, y_c: float) -> float:
    """Pointwise bound (eps y_c)^2 exp(4pi/eps - 4pi y_c) sup_boundary inside the disc y_c >= 1/eps."""
    if not eps > 0.0:
        raise DomainError(f"eps must be positive, got {eps}")
    if y_c < 1.0 / eps:
        raise DomainError(f"y_c={y_c} lies outside the disc of eps={eps}")
    return (eps * y_c) ** 2 * math.exp(4.0 * math.pi / eps - 4.0 * math.pi * y_c) * sup_boundary


def f_sup_bound_X(sup_Y: float, level: int, eps_unit: float) -> float:
    """max{1, (n eps/2pi)^2} sup_Y, using m_c <= n for every cusp."""
    if sup_Y < 0 or level < 1 or not eps_unit > 0:
        raise DomainError("f_sup_bound_X needs sup_Y >= 0, level >= 1 and eps > 0")
    return max(1.0, (level * eps_unit / TWO_PI) ** 2) * sup_Y


def f_sup_bound_X_by_cusp(sup_Y: float, cusp_eps: Sequence[CuspEpsilons], mode: ExtensionMode) -> float:
    """sup_X from the actual cusp widths."""
    if mode is ExtensionMode.SHARP:
        factors = [f_cusp_extension_factor(ce.eps) for ce in cusp_eps]
    else:
        factors = [max(1.0, (ce.eps / TWO_PI) ** 2) for ce in cusp_eps]
    return max([1.0] + factors) * sup_Y


def zeta_bound(sup_X: float, genus: int) -> float:
    """sup_X/g, an upper bound for zeta_Gamma (the -1/vol term is dropped)."""
    if genus < 1:
        logger.error("zeta bound requested for genus %s", genus)
        raise GenusZeroError("positive genus required")
    if not sup_X > 0.0:
        raise DomainError(f"sup_X must be positive, got {sup_X}")
    return sup_X / genus


def compute_f_bounds(
    a: float,
    N: int,
    level: int,
    eps_unit: float,
    genus: int = 1,
    cusp_eps: Sequence[CuspEpsilons] = (),
    extension: ExtensionMode = ExtensionMode.COARSE,
    round_digits: Optional[int] = None,
) -> FBoundResult:
    """Chain the interior bound, the cusp extension and the zeta bound.

    With round_digits the interior bound is rounded up to that many
    significant figures before it is extended.
    """
    sup_Y = f_sup_bound_interior(a, N)
    if round_digits is not None:
        sup_Y = round_up_sig(sup_Y, round_digits)
    if extension is ExtensionMode.COARSE or not cusp_eps:
        sup_X = f_sup_bound_X(sup_Y, level, eps_unit)
    else:
        sup_X = f_sup_bound_X_by_cusp(sup_Y, cusp_eps, ExtensionMode(extension))
    result = FBoundResult(a=a, N_used=N, sup_Y=sup_Y, sup_X=sup_X, zeta=zeta_bound(sup_X, genus))
    logger.debug("F bounds: %s", result)
    return result
