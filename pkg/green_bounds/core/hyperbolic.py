"""Upper half-plane geometry.

Points, Moebius transformations, the point-pair invariant
u(z, w) = 1 + |z - w|^2 / (2 Im z Im w) = cosh d(z, w) and the free Green
kernel L(u) = (1/4pi) log((u + 1)/(u - 1)).
"""

import cmath
import logging
import math
from dataclasses import dataclass
from numbers import Integral
from typing import Tuple, Union

from ..errors import DomainError

logger = logging.getLogger(__name__)

Real = Union[int, float]

DET_TOLERANCE = 1e-12


@dataclass(frozen=True)
class UhpPoint:
    """A point z = x + iy of the upper half-plane.

    Attributes:
        x: Real part.
        y: Imaginary part, strictly positive.
    """
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"point coordinates must be finite, got ({self.x}, {self.y})")
        if self.y <= 0:
            raise DomainError(f"point must lie in the upper half-plane, got y={self.y}")

    @classmethod
    def from_complex(cls, z: complex) -> "UhpPoint":
        return cls(z.real, z.imag)

    def as_complex(self) -> complex:
        return complex(self.x, self.y)


def _is_integer(value: Real) -> bool:
    if isinstance(value, Integral):
        return True
    return isinstance(value, float) and value.is_integer()


@dataclass(frozen=True)
class Moebius:
    """A 2x2 matrix (a b; c d) of determinant one acting by z -> (az + b)/(cz + d).

    Integer matrices must have determinant exactly one; real matrices
    within DET_TOLERANCE.
    """
    a: Real
    b: Real
    c: Real
    d: Real

    def __post_init__(self):
        if self.is_integral:
            det = int(self.a) * int(self.d) - int(self.b) * int(self.c)
            if det != 1:
                raise DomainError(f"integer matrix {self.entries} has determinant {det}, expected 1")
        else:
            det = self.a * self.d - self.b * self.c
            if abs(det - 1.0) > DET_TOLERANCE:
                raise DomainError(f"matrix {self.entries} has determinant {det}, expected 1")

    @classmethod
    def identity(cls) -> "Moebius":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, k: Real) -> "Moebius":
        return cls(1, k, 0, 1)

    @classmethod
    def normalized(cls, a: float, b: float, c: float, d: float) -> "Moebius":
        """Scale a real matrix of positive determinant to determinant one."""
        det = a * d - b * c
        if det <= 0:
            raise DomainError(f"cannot normalize a matrix with determinant {det}")
        s = math.sqrt(det)
        return cls(a / s, b / s, c / s, d / s)

    @property
    def entries(self) -> Tuple[Real, Real, Real, Real]:
        return (self.a, self.b, self.c, self.d)

    @property
    def is_integral(self) -> bool:
        return all(_is_integer(v) for v in self.entries)

    def as_ints(self) -> Tuple[int, int, int, int]:
        if not self.is_integral:
            raise DomainError(f"matrix {self.entries} is not integral")
        return tuple(int(v) for v in self.entries)

    def inverse(self) -> "Moebius":
        return Moebius(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "Moebius":
        return Moebius(-self.a, -self.b, -self.c, -self.d)

    def __matmul__(self, other: "Moebius") -> "Moebius":
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Moebius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def apply(self, z: UhpPoint) -> UhpPoint:
        return mobius_apply(self, z)


def mobius_apply(m: Moebius, z: UhpPoint) -> UhpPoint:
    """Apply m to z.

    The imaginary part is computed as Im z / |cz + d|^2 so it stays
    positive even when the complex quotient loses precision.
    """
    zc = z.as_complex()
    denom = m.c * zc + m.d
    w = (m.a * zc + m.b) / denom
    return UhpPoint(w.real, z.y / abs(denom) ** 2)


def point_pair_invariant(z: UhpPoint, w: UhpPoint) -> float:
    """Return u(z, w) = 1 + |z - w|^2 / (2 Im z Im w); symmetric and >= 1."""
    dx = z.x - w.x
    dy = z.y - w.y
    return 1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y)


def hyperbolic_distance(z: UhpPoint, w: UhpPoint) -> float:
    return math.acosh(point_pair_invariant(z, w))


def free_green_L(u: float) -> float:
    """Free-space Green kernel L(u) = (1/4pi) log((u + 1)/(u - 1)).

    Raises:
        DomainError: If u <= 1.
    """
    if not u > 1.0:
        logger.error("free_green_L called with u=%s", u)
        raise DomainError(f"free Green kernel requires u > 1, got {u}")
    return math.log((u + 1.0) / (u - 1.0)) / (4.0 * math.pi)


def disc_area(a: float) -> float:
    """Hyperbolic area of the disc {w : u(z, w) <= a}."""
    if a < 1.0:
        raise DomainError(f"disc threshold must be >= 1, got {a}")
    return 2.0 * math.pi * (a - 1.0)


def q_parameter(tau: complex) -> complex:
    """exp(2 pi i tau)."""
    return cmath.exp(2j * math.pi * tau)
