"""Congruence subgroups of SL2(Z).

Membership, index, genus, stack-convention volume, cusps with widths and
scaling matrices, cusp-local coordinates and the admissibility
inequalities for the cusp disc parameters.

The closed formulas for index, elliptic points and cusps are checked
against an independent permutation representation of SL2(Z) on the coset
space (see CosetAction).
"""

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from ..errors import AdmissibilityError, DomainError, UnsupportedFamilyError
from .hyperbolic import Moebius, UhpPoint, mobius_apply, q_parameter

logger = logging.getLogger(__name__)

S_MATRIX = Moebius(0, -1, 1, 0)
T_MATRIX = Moebius(1, 1, 0, 1)
MINUS_ONE = Moebius(-1, 0, 0, -1)


class Family(str, Enum):
    FULL = "full"
    GAMMA0 = "gamma0"
    GAMMA1 = "gamma1"
    PRINCIPAL = "principal"


@dataclass(frozen=True)
class GroupSpec:
    """A congruence subgroup descriptor.

    Attributes:
        family: One of full, gamma0, gamma1, principal.
        level: The level n >= 1 (forced to 1 for the full modular group).
    """
    family: Family
    level: int = 1

    def __post_init__(self):
        try:
            family = Family(self.family)
        except ValueError:
            raise DomainError(f"unknown subgroup family: {self.family!r}") from None
        object.__setattr__(self, "family", family)
        if isinstance(self.level, bool) or int(self.level) != self.level or self.level < 1:
            raise DomainError(f"level must be a positive integer, got {self.level!r}")
        object.__setattr__(self, "level", 1 if family is Family.FULL else int(self.level))

    @property
    def label(self) -> str:
        if self.family is Family.FULL:
            return "SL2(Z)"
        return f"{self.family.value}({self.level})"


# ---------------------------------------------------------------------------
# Elementary arithmetic
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        p += 1
    if n > 1:
        factors.append((n, 1))
    return tuple(factors)


def _primes(n: int) -> List[int]:
    return [p for p, _ in _factorize(n)]


def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _euler_phi(n: int) -> int:
    result = n
    for p in _primes(n):
        result = result // p * (p - 1)
    return result


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def complete_to_sl2(a: int, c: int) -> Moebius:
    """Return an integer matrix (a b; c d) of determinant one."""
    g, x, y = _egcd(a, c)
    if g != 1:
        raise DomainError(f"({a}, {c}) is not a primitive column")
    # a*x + c*y = 1, so (a, -y; c, x) has determinant one
    return Moebius(a, -y, c, x)


# ---------------------------------------------------------------------------
# Membership, index, volume, genus
# ---------------------------------------------------------------------------

def contains(spec: GroupSpec, m: Moebius) -> bool:
    """True iff the integer matrix m lies in the group described by spec."""
    a, b, c, d = m.as_ints()
    n = spec.level
    if spec.family is Family.FULL or n == 1:
        return True
    if spec.family is Family.GAMMA0:
        return c % n == 0
    if spec.family is Family.GAMMA1:
        return c % n == 0 and (a - 1) % n == 0 and (d - 1) % n == 0
    return b % n == 0 and c % n == 0 and (a - 1) % n == 0 and (d - 1) % n == 0


def contains_minus_one(spec: GroupSpec) -> bool:
    if spec.family in (Family.FULL, Family.GAMMA0):
        return True
    return spec.level <= 2


def minus_one_count(spec: GroupSpec) -> int:
    """#(Gamma intersected with {+1, -1})."""
    return 2 if contains_minus_one(spec) else 1


def index_in_sl2z(spec: GroupSpec) -> int:
    n = spec.level
    if spec.family is Family.FULL or n == 1:
        return 1
    if spec.family is Family.GAMMA0:
        index = Fraction(n)
        for p in _primes(n):
            index *= Fraction(p + 1, p)
        return int(index)
    sl2_mod_n = Fraction(n ** 3)
    for p in _primes(n):
        sl2_mod_n *= Fraction(p * p - 1, p * p)
    if spec.family is Family.PRINCIPAL:
        return int(sl2_mod_n)
    return int(sl2_mod_n) // n


def psl_index(spec: GroupSpec) -> int:
    """Index of the image of Gamma in PSL2(Z)."""
    index = index_in_sl2z(spec)
    return index if contains_minus_one(spec) else index // 2


def volume(spec: GroupSpec) -> float:
    """Hyperbolic volume in the stack convention: halved when -1 lies in Gamma."""
    return math.pi / 3.0 * psl_index(spec) / minus_one_count(spec)


def _kronecker_minus_one(p: int) -> int:
    if p == 2:
        return 0
    return 1 if p % 4 == 1 else -1


def _kronecker_minus_three(p: int) -> int:
    if p == 3:
        return 0
    return 1 if p % 3 == 1 else -1


def elliptic_counts(spec: GroupSpec) -> Tuple[int, int]:
    """(nu_2, nu_3): numbers of elliptic points of order 2 and 3."""
    n = spec.level
    if spec.family is Family.FULL or n == 1:
        return 1, 1
    if spec.family is Family.GAMMA0:
        nu2 = 0 if n % 4 == 0 else math.prod(1 + _kronecker_minus_one(p) for p in _primes(n))
        nu3 = 0 if n % 9 == 0 else math.prod(1 + _kronecker_minus_three(p) for p in _primes(n))
        return nu2, nu3
    if spec.family is Family.GAMMA1:
        return {2: (1, 0), 3: (0, 1)}.get(n, (0, 0))
    return 0, 0


def cusp_count(spec: GroupSpec) -> int:
    n = spec.level
    if spec.family is Family.FULL or n == 1:
        return 1
    if spec.family is Family.GAMMA0:
        return sum(_euler_phi(math.gcd(d, n // d)) for d in _divisors(n))
    if spec.family is Family.GAMMA1:
        if n <= 4:
            return {2: 2, 3: 2, 4: 3}[n]
        return sum(_euler_phi(d) * _euler_phi(n // d) for d in _divisors(n)) // 2
    if n == 2:
        return 3
    return psl_index(spec) // n


def genus(spec: GroupSpec) -> int:
    """Genus of the compactified quotient, g = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2."""
    nu2, nu3 = elliptic_counts(spec)
    g = (1 + Fraction(psl_index(spec), 12) - Fraction(nu2, 4) - Fraction(nu3, 3)
         - Fraction(cusp_count(spec), 2))
    if g.denominator != 1 or g < 0:
        raise ArithmeticError(f"genus formula produced {g} for {spec.label}")
    return int(g)


# ---------------------------------------------------------------------------
# Permutation representation on the coset space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupInvariants:
    psl_index: int
    nu2: int
    nu3: int
    nu_inf: int
    widths: Tuple[int, ...]


@dataclass
class CosetAction:
    """SL2(Z) acting on the right cosets Gamma\\SL2(Z).

    Attributes:
        spec: The subgroup.
        representatives: Integer matrices g with point i equal to the coset Gamma g.
        perm_s, perm_t, perm_minus: Right action of S, T and -1 as index lists.
    """
    spec: GroupSpec
    representatives: List[Moebius] = field(default_factory=list)
    perm_s: List[int] = field(default_factory=list)
    perm_t: List[int] = field(default_factory=list)
    perm_minus: List[int] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.representatives)

    def projective_classes(self) -> List[int]:
        """Map each coset to a canonical member of its {+1, -1} class."""
        return [min(i, j) for i, j in enumerate(self.perm_minus)]

    def cusp_orbits(self) -> List[Tuple[int, int]]:
        """(coset index, width) for every orbit of T on the projective classes."""
        bar = self.projective_classes()
        seen = set()
        orbits = []
        for start in range(self.size):
            if bar[start] != start or start in seen:
                continue
            width = 0
            i = start
            while True:
                seen.add(bar[i])
                width += 1
                i = bar[self.perm_t[i]]
                if i == start:
                    break
            orbits.append((start, width))
        return orbits

    def invariants(self) -> GroupInvariants:
        bar = self.projective_classes()
        classes = [i for i in range(self.size) if bar[i] == i]
        nu2 = sum(1 for i in classes if bar[self.perm_s[i]] == i)
        nu3 = sum(1 for i in classes if bar[self.perm_t[self.perm_s[i]]] == i)
        widths = tuple(sorted(w for _, w in self.cusp_orbits()))
        return GroupInvariants(len(classes), nu2, nu3, len(widths), widths)


def _coset_key(spec: GroupSpec) -> Tuple[Hashable, Callable[[Hashable, Moebius], Hashable]]:
    """Base point and right action for the finite set identified with Gamma\\SL2(Z)."""
    n = spec.level
    if spec.family is Family.FULL or n == 1:
        return (), lambda p, g: ()

    if spec.family is Family.GAMMA0:
        units = [u for u in range(1, n) if math.gcd(u, n) == 1] or [1]

        def act_line(p, g):
            a, b, c, d = g.as_ints()
            x, y = (p[0] * a + p[1] * c) % n, (p[0] * b + p[1] * d) % n
            return min(((u * x) % n, (u * y) % n) for u in units)

        return (0, 1 % n), act_line

    if spec.family is Family.GAMMA1:
        def act_vector(p, g):
            a, b, c, d = g.as_ints()
            return (p[0] * a + p[1] * c) % n, (p[0] * b + p[1] * d) % n

        return (0, 1 % n), act_vector

    def act_matrix(p, g):
        a, b, c, d = g.as_ints()
        pa, pb, pc, pd = p
        return ((pa * a + pb * c) % n, (pa * b + pb * d) % n,
                (pc * a + pd * c) % n, (pc * b + pd * d) % n)

    return (1 % n, 0, 0, 1 % n), act_matrix


@lru_cache(maxsize=64)
def coset_action(spec: GroupSpec) -> CosetAction:
    """Enumerate Gamma\\SL2(Z) breadth-first from the trivial coset."""
    base, act = _coset_key(spec)
    index: Dict[Hashable, int] = {base: 0}
    points = [base]
    action = CosetAction(spec=spec, representatives=[Moebius.identity()])
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for gen in (S_MATRIX, T_MATRIX):
            image = act(points[i], gen)
            if image not in index:
                index[image] = len(points)
                points.append(image)
                action.representatives.append(action.representatives[i] @ gen)
                queue.append(index[image])
    action.perm_s = [index[act(p, S_MATRIX)] for p in points]
    action.perm_t = [index[act(p, T_MATRIX)] for p in points]
    action.perm_minus = [index[act(p, MINUS_ONE)] for p in points]
    logger.debug("Coset action for %s: %d cosets", spec.label, len(points))
    return action


def invariants_from_action(spec: GroupSpec) -> GroupInvariants:
    return coset_action(spec).invariants()


def cusp_widths(spec: GroupSpec) -> Tuple[int, ...]:
    """Sorted multiset of cusp widths (all families)."""
    return invariants_from_action(spec).widths


# ---------------------------------------------------------------------------
# Cusps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CuspPoint:
    """An element of P^1(Q); denominator 0 is the point at infinity."""
    numerator: int
    denominator: int

    def __post_init__(self):
        p, q = self.numerator, self.denominator
        if q == 0:
            if p == 0:
                raise DomainError("0/0 is not a cusp")
            object.__setattr__(self, "numerator", 1)
            return
        g = math.gcd(p, q) * (1 if q > 0 else -1)
        object.__setattr__(self, "numerator", p // g)
        object.__setattr__(self, "denominator", q // g)

    @property
    def is_infinity(self) -> bool:
        return self.denominator == 0

    def __str__(self) -> str:
        if self.is_infinity:
            return "∞"
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


INFINITY = CuspPoint(1, 0)


@dataclass(frozen=True)
class CuspData:
    """A cusp of Gamma.

    Attributes:
        width: The width m_c.
        representative: Exact representative, None when only the width is known.
        base_matrix: Integer matrix g with g(oo) = representative.
        ordinal: Position in the cusp list, used to label width-only cusps.
    """
    width: int
    representative: Optional[CuspPoint] = None
    base_matrix: Optional[Moebius] = None
    ordinal: int = 0

    def __post_init__(self):
        if self.width < 1:
            raise DomainError(f"cusp width must be positive, got {self.width}")
        if (self.representative is None) != (self.base_matrix is None):
            raise DomainError("representative and base matrix must be given together")
        if self.base_matrix is not None:
            a, _, c, _ = self.base_matrix.as_ints()
            if CuspPoint(a, c) != self.representative:
                raise DomainError(f"base matrix does not map ∞ to {self.representative}")

    @property
    def is_exact(self) -> bool:
        return self.representative is not None

    @property
    def label(self) -> str:
        if self.representative is not None:
            return str(self.representative)
        return f"cusp{self.ordinal}[w={self.width}]"

    @property
    def scaling(self) -> Moebius:
        """sigma_c = g * diag(sqrt(m), 1/sqrt(m))."""
        if self.base_matrix is None:
            raise UnsupportedFamilyError(f"no scaling matrix for width-only cusp {self.label}")
        a, b, c, d = self.base_matrix.as_ints()
        r = math.sqrt(self.width)
        return Moebius(a * r, b / r, c * r, d / r)


@lru_cache(maxsize=256)
def _cusps_cached(spec: GroupSpec) -> Tuple[CuspData, ...]:
    n = spec.level
    found = [CuspData(1, INFINITY, Moebius.identity(), 0)]
    if spec.family is Family.FULL or n == 1:
        return tuple(found)
    for c in _divisors(n):
        if c == n:
            continue
        g = math.gcd(c, n // c)
        residues = [r for r in range(g) if math.gcd(r, g) == 1] if g > 1 else [0]
        for r in residues:
            a = r
            while math.gcd(a, c) != 1:
                a += g
            base = complete_to_sl2(a, c)
            found.append(CuspData(n // math.gcd(c * c, n), CuspPoint(a, c), base, len(found)))
    logger.debug("Cusps of %s: %s", spec.label, [(cd.label, cd.width) for cd in found])
    return tuple(found)


def cusps(spec: GroupSpec) -> List[CuspData]:
    """Exact cusp representatives with widths (full and gamma0 only).

    Raises:
        UnsupportedFamilyError: For gamma1 and principal levels above one.
    """
    if spec.family in (Family.GAMMA1, Family.PRINCIPAL) and spec.level > 1:
        logger.error("Exact cusp enumeration requested for %s", spec.label)
        raise UnsupportedFamilyError(
            f"exact cusp enumeration is only available for full and gamma0, not {spec.label}"
        )
    return list(_cusps_cached(spec))


def cusp_data(spec: GroupSpec) -> List[CuspData]:
    """Exact cusps where available, width-only cusps otherwise."""
    if spec.family in (Family.GAMMA1, Family.PRINCIPAL) and spec.level > 1:
        return [CuspData(w, ordinal=i) for i, w in enumerate(cusp_widths(spec))]
    return cusps(spec)


def _in_pm_gamma(spec: GroupSpec, m: Moebius) -> bool:
    return contains(spec, m) or contains(spec, -m)


def verify_scaling(spec: GroupSpec, cusp: CuspData) -> bool:
    """Check that g T^m g^-1 generates the stabilizer of the cusp in +-Gamma."""
    if cusp.base_matrix is None:
        raise UnsupportedFamilyError(f"cannot verify width-only cusp {cusp.label}")
    g = cusp.base_matrix
    g_inv = g.inverse()
    if not _in_pm_gamma(spec, g @ Moebius.translation(cusp.width) @ g_inv):
        return False
    return not any(
        _in_pm_gamma(spec, g @ Moebius.translation(j) @ g_inv) for j in range(1, cusp.width)
    )


def cusp_coordinates(z: UhpPoint, cusp: CuspData) -> Tuple[complex, float]:
    """Return (q_c(z), y_c(z)) with q_c = exp(2 pi i sigma_c^-1 z) and y_c = Im sigma_c^-1 z."""
    tau = mobius_apply(cusp.scaling.inverse(), z)
    return q_parameter(tau.as_complex()), tau.y


def min_c_lower_bound(spec: GroupSpec, cusp: CuspData) -> float:
    """Certified lower bound m_c for min |c| over Gamma minus Gamma_c in sigma_c coordinates."""
    return float(cusp.width)


# ---------------------------------------------------------------------------
# Admissible cusp disc parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CuspEpsilons:
    cusp: CuspData
    eps: float
    eps_prime: float


def delta_lambda(delta: float) -> float:
    """delta + sqrt(delta^2 - 1), the exponential of arcosh(delta)."""
    if not delta > 1.0:
        raise DomainError(f"delta must exceed 1, got {delta}")
    return delta + math.sqrt(delta * delta - 1.0)


def unit_epsilons(delta: float) -> Tuple[float, float]:
    """(eps, eps') for a cusp of width one."""
    lam = delta_lambda(delta)
    eps = lam ** -1.5
    return eps, lam * eps


def admissible_epsilons(spec: GroupSpec, delta: float) -> List[CuspEpsilons]:
    """eps_c = m_c eps and eps'_c = (delta + sqrt(delta^2 - 1)) eps_c for every cusp."""
    lam = delta_lambda(delta)
    eps, _ = unit_epsilons(delta)
    result = []
    for cusp in cusp_data(spec):
        eps_c = cusp.width * eps
        eps_prime_c = lam * eps_c
        bound = min_c_lower_bound(spec, cusp)
        if eps_prime_c * math.sqrt(lam) > bound * (1.0 + 1e-12):
            raise AdmissibilityError(f"disc parameter for {cusp.label} violates the C bound")
        if lam * eps_c > eps_prime_c:
            raise AdmissibilityError(f"eps ordering violated for {cusp.label}")
        result.append(CuspEpsilons(cusp, eps_c, eps_prime_c))
    logger.debug("Admissible epsilons for %s at delta=%s: %s", spec.label, delta,
                 [(e.cusp.label, e.eps, e.eps_prime) for e in result])
    return result


# ---------------------------------------------------------------------------
# Locating points in cusp discs
# ---------------------------------------------------------------------------

def reduce_to_fundamental_domain(z: UhpPoint, max_steps: int = 10000) -> Tuple[Moebius, UhpPoint]:
    """Return (h, h z) with h in SL2(Z) and h z in the standard fundamental domain."""
    h = Moebius.identity()
    w = z
    for _ in range(max_steps):
        k = math.floor(w.x + 0.5)
        if k:
            h = Moebius.translation(-k) @ h
            w = mobius_apply(Moebius.translation(-k), w)
        if w.x * w.x + w.y * w.y < 1.0 - 1e-15:
            h = S_MATRIX @ h
            w = mobius_apply(S_MATRIX, w)
            continue
        return h, w
    raise ArithmeticError(f"reduction of {z} did not terminate")


@dataclass(frozen=True)
class CuspLocation:
    """Where a point sits relative to the cusps.

    cusp is None when the reduced height is at most one; otherwise y_c and q
    are the coordinates of the point in the normalized cusp chart.
    """
    cusp: Optional[CuspData]
    y_c: float
    q: complex
    height: float

    def in_disc(self, cusp: CuspData, eps_c: float) -> bool:
        return self.cusp is not None and self.cusp.label == cusp.label and self.y_c > 1.0 / eps_c


def locate_point(spec: GroupSpec, z: UhpPoint) -> CuspLocation:
    """Find the cusp whose normalized chart sees z highest.

    Reduction gives h with height y* = Im(hz); for y* > 1 the maximizing h is
    unique up to +-T^k, so exactly one cusp c and offset j satisfy
    +-g_c T^-j h in Gamma, and then y_c = y*/m_c.
    """
    h, w = reduce_to_fundamental_domain(z)
    if w.y <= 1.0:
        return CuspLocation(None, 0.0, 0j, w.y)
    for cusp in cusps(spec):
        g = cusp.base_matrix
        for j in range(cusp.width):
            if _in_pm_gamma(spec, g @ Moebius.translation(-j) @ h):
                tau = complex(w.x - j, w.y) / cusp.width
                return CuspLocation(cusp, tau.imag, q_parameter(tau), w.y)
    raise ArithmeticError(f"no cusp of {spec.label} matches the reduction of {z}")


def discs_disjoint(spec: GroupSpec, cusp_eps: Sequence[CuspEpsilons], samples: int = 8) -> bool:
    """Check that the enlarged cusp discs D_c(eps'_c) are pairwise disjoint.

    Analytic part: for distinct cusps every element of sigma_d^-1 Gamma sigma_c
    has |lower-left entry| >= sqrt(m_c m_d), so the discs are disjoint when
    eps'_c eps'_d <= m_c m_d. Numerical part: sample points of each disc must
    locate to their own cusp.
    """
    for i, first in enumerate(cusp_eps):
        for second in cusp_eps[i + 1:]:
            if first.eps_prime * second.eps_prime > first.cusp.width * second.cusp.width:
                logger.warning("Discs of %s and %s may overlap", first.cusp.label, second.cusp.label)
                return False
    if any(not ce.cusp.is_exact for ce in cusp_eps):
        return True
    for ce in cusp_eps:
        for k in range(samples):
            tau = UhpPoint(k / samples, (1.0 + 0.05 * (k + 1)) / ce.eps_prime)
            z = mobius_apply(ce.cusp.scaling, tau)
            location = locate_point(spec, z)
            _, y_c = cusp_coordinates(z, ce.cusp)
            if not location.in_disc(ce.cusp, ce.eps_prime) or abs(location.y_c - y_c) > 1e-9 * y_c:
                logger.warning("Sample %s of disc %s located at %s", tau, ce.cusp.label, location)
                return False
    return True
