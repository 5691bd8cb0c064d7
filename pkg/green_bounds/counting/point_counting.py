"""Hyperbolic lattice point counting.

N_Gamma(z, b) = #{gamma in Gamma : u(z, gamma z) <= b} by exact bounded
enumeration of integer matrices, an exhaustive brute-force oracle, the
singular sum of the Green function bound, and a certified supremum of
N_SL2(Z)(., b) over the strip Y0.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..core.hyperbolic import Moebius, UhpPoint, free_green_L, mobius_apply, point_pair_invariant
from ..core.modular_group import Family, GroupSpec, contains, unit_epsilons
from ..errors import CertificationError, DomainError, OrbitCoincidenceError
from .grid_evaluator import TOLERANCE, GridConfig, GridEvaluator, GridGeometry, lattice_counts

logger = logging.getLogger(__name__)

MAX_GRID_STEP = 0.05
# The strip Y0 reaches up to height 1/eps(delta)
STRIP_DELTA = 2.0
SINGULAR_TOLERANCE = 1e-14


@dataclass(frozen=True)
class CountCertificate:
    """Certified supremum of N_SL2(Z)(z, b) over the strip Y0.

    Attributes:
        threshold: The threshold b.
        grid_step: Cell side h.
        certified_sup: Upper bound for sup over Y0 of N(z, b).
        max_sample: Largest exact count N(z0, b) over cell centres z0.
        cells: Number of cells.
        worst_cell: Centre of the cell attaining certified_sup.
        delta: Disc parameter fixing the top 1/eps(delta) of the strip.
    """
    threshold: float
    grid_step: float
    certified_sup: int
    max_sample: int
    cells: int
    worst_cell: Optional[UhpPoint] = None
    delta: float = STRIP_DELTA

    def __post_init__(self):
        if self.certified_sup < self.max_sample:
            raise CertificationError(
                f"certified supremum {self.certified_sup} below sampled count {self.max_sample}"
            )


def _check_threshold(b: float) -> None:
    if not b >= 1.0:
        logger.error("Lattice count threshold below 1: %s", b)
        raise DomainError(f"threshold b must be >= 1, got {b}")


def enumerate_translates(spec: GroupSpec, z: UhpPoint, w: UhpPoint, b: float) -> List[Moebius]:
    """All gamma in Gamma with u(z, gamma w) <= b.

    With t = |cw + d|^2 the image gamma w has height w.y/t, and
    u >= (y/y' + y'/y)/2 forces t <= (w.y/z.y)(b + sqrt(b^2 - 1)). For a
    coprime lower row the remaining freedom is gamma -> T^k gamma, bounded by
    |Re(gamma w) - Re z| <= sqrt(2(b - 1) z.y y' - (z.y - y')^2).
    """
    _check_threshold(b)
    t_max = (w.y / z.y) * (b + math.sqrt(b * b - 1.0))
    c_max = math.floor(math.sqrt(t_max) / w.y + 1e-9)
    found = []
    for c in range(-c_max, c_max + 1):
        centre = -c * w.x
        spread = math.sqrt(max(t_max - c * c * w.y * w.y, 0.0))
        for d in range(math.ceil(centre - spread - 1e-9), math.floor(centre + spread + 1e-9) + 1):
            if math.gcd(c, d) != 1:
                continue
            if c == 0:
                base = Moebius(d, 0, 0, d)
            else:
                # a0 d - b0 c = 1
                a0 = pow(d % abs(c), -1, abs(c)) if abs(c) > 1 else 0
                b0 = (a0 * d - 1) // c
                base = Moebius(a0, b0, c, d)
            image = mobius_apply(base, w)
            radicand = 2.0 * (b - 1.0) * z.y * image.y - (z.y - image.y) ** 2
            if radicand < -1e-9:
                continue
            r = math.sqrt(max(radicand, 0.0))
            for k in range(math.ceil(z.x - image.x - r - 1e-9), math.floor(z.x - image.x + r + 1e-9) + 1):
                gamma = Moebius.translation(k) @ base
                if not contains(spec, gamma):
                    continue
                if point_pair_invariant(z, mobius_apply(gamma, w)) <= b + TOLERANCE:
                    found.append(gamma)
    logger.debug("Found %d translates with u <= %s for %s", len(found), b, spec.label)
    return found


def enumerate_orbit_elements(spec: GroupSpec, z: UhpPoint, b: float) -> List[Moebius]:
    """Exactly the gamma in Gamma with u(z, gamma z) <= b (both signs when -1 is in Gamma)."""
    return enumerate_translates(spec, z, z, b)


def count_orbit(spec: GroupSpec, z: UhpPoint, b: float) -> int:
    return len(enumerate_orbit_elements(spec, z, b))


def required_entry_bound(z: UhpPoint, b: float) -> int:
    """Entry bound M such that every gamma with u(z, gamma z) <= b has entries in [-M, M].

    Conjugating by the affine map sending i to z gives a matrix of squared
    norm 2u, whose entries are a - cx, (ax + b - cx^2 - dx)/y, cy and cx + d.
    """
    r = math.sqrt(2.0 * b)
    ax = abs(z.x)
    c_bound = r / z.y
    d_bound = c_bound * ax + r
    a_bound = r + c_bound * ax
    b_bound = z.y * r + a_bound * ax + c_bound * ax * ax + d_bound * ax
    return math.ceil(max(a_bound, b_bound, c_bound, d_bound))


def _membership_mask(spec: GroupSpec, a, b, c, d) -> np.ndarray:
    n = spec.level
    if spec.family is Family.FULL or n == 1:
        return np.ones(a.shape, dtype=bool)
    mask = c % n == 0
    if spec.family is Family.GAMMA0:
        return mask
    mask &= ((a - 1) % n == 0) & ((d - 1) % n == 0)
    if spec.family is Family.PRINCIPAL:
        mask &= b % n == 0
    return mask


def count_orbit_bruteforce(spec: GroupSpec, z: UhpPoint, b: float, entry_bound: int) -> int:
    """Exhaustive count over all integer matrices with entries in [-M, M].

    Raises:
        CertificationError: If M is smaller than required_entry_bound(z, b).
    """
    _check_threshold(b)
    needed = required_entry_bound(z, b)
    if entry_bound < needed:
        logger.error("Entry bound %d too small, need %d", entry_bound, needed)
        raise CertificationError(f"entry bound too small: {entry_bound} < {needed}")

    m = entry_bound
    values = np.arange(-m, m + 1, dtype=np.int64)
    a, c, d = (v.ravel() for v in np.meshgrid(values, values, values, indexing="ij"))

    # c != 0: b is determined by ad - bc = 1
    nonzero = c != 0
    a, c, d = a[nonzero], c[nonzero], d[nonzero]
    numerator = a * d - 1
    divisible = numerator % c == 0
    a, c, d = a[divisible], c[divisible], d[divisible]
    bb = numerator[divisible] // c
    keep = np.abs(bb) <= m
    a, bb, c, d = a[keep], bb[keep], c[keep], d[keep]

    # c == 0: a = d = +-1, b free
    for sign in (1, -1):
        a = np.concatenate([a, np.full(values.shape, sign)])
        bb = np.concatenate([bb, values])
        c = np.concatenate([c, np.zeros(values.shape, dtype=np.int64)])
        d = np.concatenate([d, np.full(values.shape, sign)])

    member = _membership_mask(spec, a, bb, c, d)
    a, bb, c, d = (v[member].astype(np.float64) for v in (a, bb, c, d))
    zc = complex(z.x, z.y)
    denom = c * zc + d
    image = (a * zc + bb) / denom
    image_y = z.y / np.abs(denom) ** 2
    u = 1.0 + ((z.x - image.real) ** 2 + (z.y - image_y) ** 2) / (2.0 * z.y * image_y)
    return int(np.count_nonzero(u <= b + TOLERANCE))


def singular_sum(spec: GroupSpec, z: UhpPoint, w: UhpPoint, delta: float) -> float:
    """Sum of L(u(z, gamma w)) - L(delta) over gamma in Gamma with u(z, gamma w) <= delta.

    Raises:
        OrbitCoincidenceError: If z lies (numerically) in the orbit of w.
    """
    if not delta > 1.0:
        raise DomainError(f"delta must exceed 1, got {delta}")
    total = 0.0
    l_delta = free_green_L(delta)
    for gamma in enumerate_translates(spec, z, w, delta):
        u = point_pair_invariant(z, mobius_apply(gamma, w))
        if u <= 1.0 + SINGULAR_TOLERANCE:
            logger.error("Orbit coincidence: u(z, gamma w) = %s for gamma=%s", u, gamma.entries)
            raise OrbitCoincidenceError(f"z lies in the orbit of w (u = {u})")
        if u <= delta:
            total += free_green_L(u) - l_delta
    return total


def strip_geometry(grid_step: float, delta: float = STRIP_DELTA) -> GridGeometry:
    eps, _ = unit_epsilons(delta)
    return GridGeometry(y_bottom=math.sqrt(3.0) / 2.0, y_top=1.0 / eps, step=grid_step)


def sup_count_Y0(
    b: float,
    grid_step: float,
    config: Optional[GridConfig] = None,
    delta: float = STRIP_DELTA,
) -> CountCertificate:
    """Certified upper bound for sup over Y0 of N_SL2(Z)(z, b).

    Y0 is the part of the standard fundamental domain below height
    1/eps(delta). Each cell of side h is represented by its centre z0 and
    radius bound rho; for z in the cell d(z, gamma z) <= d(z0, gamma z0) + 2 rho,
    so counting at z0 with threshold cosh(arcosh b + 2 rho) dominates every
    count in the cell.

    Raises:
        DomainError: If b <= 1, delta <= 1 or h is outside (0, 0.05].
    """
    if not b > 1.0:
        raise DomainError(f"threshold must exceed 1, got {b}")
    if not 0.0 < grid_step <= MAX_GRID_STEP:
        logger.error("Grid step out of range: %s", grid_step)
        raise DomainError(f"grid step must lie in (0, {MAX_GRID_STEP}], got {grid_step}")
    geometry = strip_geometry(grid_step, delta)
    logger.info(
        "Certifying sup N(., %s) over %d cells of side %s up to height %.4f",
        b, geometry.cells, grid_step, geometry.y_top,
    )
    result = GridEvaluator(config or GridConfig()).evaluate(geometry, b)
    worst = UhpPoint(
        float(geometry.column_centers()[result.column]),
        geometry.row_bottom(result.row) + grid_step / 2.0,
    )
    return CountCertificate(
        threshold=b,
        grid_step=grid_step,
        certified_sup=result.certified,
        max_sample=result.sample,
        cells=geometry.cells,
        worst_cell=worst,
        delta=delta,
    )


def oracle_cross_check(b: float, grid_step: float, samples: int, seed: int = 0, delta: float = STRIP_DELTA) -> int:
    """Compare the counting paths at randomly chosen cell centres of the strip.

    At each centre the vectorized row count, count_orbit and the brute-force
    oracle must agree exactly. Returns the number of centres checked.

    Raises:
        CertificationError: On the first disagreement.
    """
    geometry = strip_geometry(grid_step, delta)
    rng = np.random.default_rng(seed)
    full = GroupSpec(Family.FULL)
    xs = geometry.column_centers()
    for _ in range(samples):
        row = int(rng.integers(geometry.rows))
        column = int(rng.integers(geometry.columns))
        z = UhpPoint(float(xs[column]), geometry.row_bottom(row) + grid_step / 2.0)
        vectorized = int(lattice_counts(np.array([z.x]), z.y, b)[0])
        direct = count_orbit(full, z, b)
        oracle = count_orbit_bruteforce(full, z, b, required_entry_bound(z, b))
        if not vectorized == direct == oracle:
            logger.error("Count mismatch at %s: vectorized=%d, direct=%d, oracle=%d", z, vectorized, direct, oracle)
            raise CertificationError(f"oracle mismatch at {z}: {vectorized}, {direct}, {oracle}")
    logger.info("Oracle agreed with the grid counts at %d cell centres", samples)
    return samples
