"""Assembly of the explicit bounds on the canonical Green function.

Given the constants of a cofinite group (spectral gap eta, the Green
function constants A and B, the point-count constant C, bounds on F_Gamma
and the cusp disc parameters) this module produces the constants S, T(eps),
r_delta, the tilde constants of each cusp, one interval per position regime
and a quadratic in the level that dominates every upper bound.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.hyperbolic import UhpPoint
from ..core.modular_group import (
    CuspEpsilons,
    CuspLocation,
    GroupSpec,
    delta_lambda,
    locate_point,
    unit_epsilons,
)
from ..counting.point_counting import singular_sum
from ..errors import AdmissibilityError, CertificationError, DomainError, OrbitCoincidenceError
from .rounding import round_sig, round_up_sig

logger = logging.getLogger(__name__)

FOUR_PI = 4.0 * math.pi
LOG2_OVER_2PI = math.log(2.0) / (2.0 * math.pi)
# Relative slack on the admissibility inequalities
ADMISSIBILITY_TOLERANCE = 1e-12

Polynomial = Tuple[float, float, float]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise DomainError(f"invalid interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def shifted(self, offset: float) -> "Interval":
        return Interval(self.lo + offset, self.hi + offset)

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def to_list(self) -> List[float]:
        return [self.lo, self.hi]

    @classmethod
    def from_list(cls, values: Sequence[float]) -> "Interval":
        lo, hi = values
        return cls(float(lo), float(hi))


@dataclass(frozen=True)
class BoundParams:
    """Hypotheses of the Green function bound.

    Attributes:
        delta: Radius parameter, > 1.
        eta: Spectral gap lower bound in (0, 1/4].
        A, B: Bounds on the hyperbolic Green function, A <= B.
        C: Point-count constant, > 0.
        sup_F_Y: Upper bound for F_Gamma on Y.
        sup_F_X: Upper bound for F_Gamma on the whole curve.
        genus: Genus used in the bounds (any 1 <= genus <= g is valid).
        volume: Hyperbolic volume with the stack convention.
        zeta: Upper bound for zeta_Gamma.
        minus_one_count: Number of elements of Gamma in {1, -1}.
        cusps: Disc parameters (eps_c, eps'_c) of every cusp.
        level: Level n; every cusp width must be at most n.
    """
    delta: float
    eta: float
    A: float
    B: float
    C: float
    sup_F_Y: float
    sup_F_X: float
    genus: int
    volume: float
    zeta: float
    minus_one_count: int
    cusps: Tuple[CuspEpsilons, ...]
    level: int = 1

    def __post_init__(self):
        object.__setattr__(self, "cusps", tuple(self.cusps))
        problems = self._violations()
        if problems:
            logger.error("Inadmissible bound parameters: %s", "; ".join(problems))
            raise AdmissibilityError("; ".join(problems))

    def _violations(self) -> List[str]:
        problems = []
        if not self.delta > 1.0:
            problems.append(f"delta must exceed 1, got {self.delta}")
        if not 0.0 < self.eta <= 0.25:
            problems.append(f"eta must lie in (0, 1/4], got {self.eta}")
        if not self.A <= self.B:
            problems.append(f"A={self.A} exceeds B={self.B}")
        if not self.C > 0.0:
            problems.append(f"C must be positive, got {self.C}")
        if not 0.0 <= self.sup_F_Y <= self.sup_F_X:
            problems.append(f"need 0 <= sup_F_Y={self.sup_F_Y} <= sup_F_X={self.sup_F_X}")
        if self.genus < 1:
            problems.append("positive genus required")
        if not self.volume > 0.0:
            problems.append(f"volume must be positive, got {self.volume}")
        if self.zeta < 0.0:
            problems.append(f"zeta must be nonnegative, got {self.zeta}")
        if self.minus_one_count not in (1, 2):
            problems.append(f"minus_one_count must be 1 or 2, got {self.minus_one_count}")
        if not self.cusps:
            problems.append("at least one cusp required")
        if problems:
            return problems

        lam = delta_lambda(self.delta)
        slack = 1.0 + ADMISSIBILITY_TOLERANCE
        for ce in self.cusps:
            m = ce.cusp.width
            if m > self.level:
                problems.append(f"cusp {ce.cusp.label} has width {m} above the level {self.level}")
            if not 0.0 < ce.eps < ce.eps_prime:
                problems.append(f"cusp {ce.cusp.label} needs 0 < eps < eps'")
            if lam * ce.eps > ce.eps_prime * slack:
                problems.append(f"cusp {ce.cusp.label} violates (delta + sqrt(delta^2 - 1)) eps <= eps'")
            if ce.eps_prime * math.sqrt(lam) > m * slack:
                problems.append(f"cusp {ce.cusp.label} violates the lower bound on C_c")
        for i, first in enumerate(self.cusps):
            for second in self.cusps[i + 1:]:
                if first.eps_prime * second.eps_prime > first.cusp.width * second.cusp.width * slack:
                    problems.append(f"discs of {first.cusp.label} and {second.cusp.label} may overlap")
        return problems

    def cusp_by_label(self, label: str) -> CuspEpsilons:
        for ce in self.cusps:
            if ce.cusp.label == label:
                return ce
        raise KeyError(label)


@dataclass(frozen=True)
class BoundReport:
    """Assembled constants and regime intervals.

    regime_a bounds gr^can plus the singular sum, regime_d bounds
    gr^can - m (1/2pi) log|q_c(z) - q_c(w)|; the other regimes bound gr^can.
    """
    S: float
    r_delta: float
    T_by_cusp: Dict[str, Tuple[float, float]]
    tilde_by_cusp: Dict[str, Tuple[float, float]]
    regime_a: Interval
    regime_b: Interval
    regime_c: Interval
    regime_d: Interval
    global_sup_polynomial: Polynomial
    regime_d_by_cusp: Dict[str, Interval] = field(default_factory=dict)
    int_h: Optional[Interval] = None
    inputs: Dict[str, float] = field(default_factory=dict)
    provenance: str = "custom"
    group: str = ""
    level: int = 1

    def __post_init__(self):
        if self.S < 0 or any(t < 0 for pair in self.T_by_cusp.values() for t in pair):
            raise DomainError("S and T must be nonnegative")

    def intervals(self) -> Dict[str, Interval]:
        return {"a": self.regime_a, "b": self.regime_b, "c": self.regime_c, "d": self.regime_d}

    def polynomial_at(self, n: float) -> float:
        c0, c1, c2 = self.global_sup_polynomial
        return c0 + c1 * n + c2 * n * n

    def to_dict(self) -> Dict[str, Any]:
        return {
            "S": self.S,
            "r_delta": self.r_delta,
            "T_by_cusp": {k: list(v) for k, v in self.T_by_cusp.items()},
            "tilde_by_cusp": {k: list(v) for k, v in self.tilde_by_cusp.items()},
            "regime_a": self.regime_a.to_list(),
            "regime_b": self.regime_b.to_list(),
            "regime_c": self.regime_c.to_list(),
            "regime_d": self.regime_d.to_list(),
            "global_sup_polynomial": list(self.global_sup_polynomial),
            "regime_d_by_cusp": {k: v.to_list() for k, v in self.regime_d_by_cusp.items()},
            "int_h": self.int_h.to_list() if self.int_h is not None else None,
            "inputs": dict(self.inputs),
            "provenance": self.provenance,
            "group": self.group,
            "level": self.level,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BoundReport":
        return cls(
            S=data["S"],
            r_delta=data["r_delta"],
            T_by_cusp={k: tuple(v) for k, v in data["T_by_cusp"].items()},
            tilde_by_cusp={k: tuple(v) for k, v in data["tilde_by_cusp"].items()},
            regime_a=Interval.from_list(data["regime_a"]),
            regime_b=Interval.from_list(data["regime_b"]),
            regime_c=Interval.from_list(data["regime_c"]),
            regime_d=Interval.from_list(data["regime_d"]),
            global_sup_polynomial=tuple(data["global_sup_polynomial"]),
            regime_d_by_cusp={k: Interval.from_list(v) for k, v in data.get("regime_d_by_cusp", {}).items()},
            int_h=Interval.from_list(data["int_h"]) if data.get("int_h") is not None else None,
            inputs=dict(data.get("inputs", {})),
            provenance=data.get("provenance", "custom"),
            group=data.get("group", ""),
            level=data.get("level", 1),
        )


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

def kim_sarnak_eta() -> float:
    """The spectral gap lower bound 975/4096 for congruence subgroups."""
    return 975.0 / 4096.0


def c_from_pointcount(sup_N17: int, round_up: bool = False) -> float:
    """pi/(2pi - 4)^2 times the supremum of N_SL2(Z)(z, 17) over Y0."""
    if sup_N17 < 1:
        raise DomainError(f"point count must be >= 1, got {sup_N17}")
    value = math.pi / (2.0 * math.pi - 4.0) ** 2 * sup_N17
    return round_up_sig(value, 3) if round_up else value


def spectral_constant_M(eta: float, C: float) -> float:
    """(1/(4 eta^2) + 4) C, the bound on the spectral majorant; S^2 = M zeta."""
    if not 0.0 < eta <= 0.25:
        raise DomainError(f"eta must lie in (0, 1/4], got {eta}")
    if not C > 0.0:
        raise DomainError(f"C must be positive, got {C}")
    return (1.0 / (4.0 * eta * eta) + 4.0) * C


def spectral_constant_S(eta: float, C: float, zeta: float) -> float:
    if zeta < 0.0:
        raise DomainError(f"zeta must be nonnegative, got {zeta}")
    return math.sqrt(spectral_constant_M(eta, C) * zeta)


def cusp_term_T(sup_F_Y: float, genus: int, eps: float) -> float:
    """(sup_Y F / g)(eps/4pi)^2."""
    if genus < 1:
        raise DomainError("positive genus required")
    if sup_F_Y < 0.0 or eps < 0.0:
        raise DomainError("cusp term needs sup_F_Y >= 0 and eps >= 0")
    return sup_F_Y / genus * (eps / FOUR_PI) ** 2


def r_delta(delta: float) -> float:
    """(1/24pi)(sqrt(2/(delta - 1)) + arctan sqrt((delta - 1)/2))."""
    if not delta > 1.0:
        logger.error("r_delta called with delta=%s", delta)
        raise DomainError(f"delta must exceed 1, got {delta}")
    return (math.sqrt(2.0 / (delta - 1.0)) + math.atan(math.sqrt((delta - 1.0) / 2.0))) / (24.0 * math.pi)


def _kappa(delta: float) -> float:
    # 1 - (2/pi) arctan sqrt((delta - 1)/2)
    return 1.0 - 2.0 / math.pi * math.atan(math.sqrt((delta - 1.0) / 2.0))


def tilde_constants(A: float, B: float, minus_one_count: int, eps_prime_c: float, delta: float) -> Tuple[float, float]:
    """(A~_c, B~_c) for a cusp with enlarged disc parameter eps'_c."""
    if not eps_prime_c > 0.0:
        raise DomainError(f"eps' must be positive, got {eps_prime_c}")
    base = _kappa(delta) / eps_prime_c
    spread = eps_prime_c * r_delta(delta)
    return A + minus_one_count * (base - spread), B + minus_one_count * (base + spread)


def q_term_bound(minus_one_count: int, eps_prime_c: float) -> float:
    """Upper bound m (1/2pi)(log 2 - 2pi/eps'_c) for m (1/2pi) log|q_c(z) - q_c(w)| on D_c(eps'_c)."""
    return minus_one_count * (LOG2_OVER_2PI - 1.0 / eps_prime_c)


# ---------------------------------------------------------------------------
# Consequences for h_Gamma
# ---------------------------------------------------------------------------

def int_h_interval(zeta: float, eta: float) -> Interval:
    if zeta < 0.0 or not eta > 0.0:
        raise DomainError("int_h_interval needs zeta >= 0 and eta > 0")
    return Interval(-zeta / eta, 0.0)


def _check_in_disc(eps: float, y_c: float) -> None:
    if not eps > 0.0:
        raise DomainError(f"eps must be positive, got {eps}")
    if y_c < 1.0 / eps:
        logger.error("Point with y_c=%s outside disc of eps=%s", y_c, eps)
        raise DomainError(f"y_c={y_c} lies outside the disc y_c >= 1/eps = {1.0 / eps}")


def cusp_envelope_h(
    boundary_sup: float,
    boundary_inf: float,
    sup_F_boundary: float,
    genus: int,
    volume: float,
    eps: float,
    y_c: float,
) -> Tuple[float, float]:
    """(h_minus, h_plus) enclosing h_Gamma at height y_c inside the disc of parameter eps."""
    _check_in_disc(eps, y_c)
    log_term = math.log(eps * y_c) / volume
    decay = 1.0 - math.exp(FOUR_PI / eps - FOUR_PI * y_c)
    h_plus = boundary_sup + log_term
    h_minus = boundary_inf - sup_F_boundary / genus * (eps / FOUR_PI) ** 2 * decay + log_term
    return h_minus, h_plus


def h_bounds_in_cusp(S: float, T_eps: float, volume: float, eps: float, y_c: float) -> Interval:
    """Enclosure of h_Gamma(z) for z in D_c(eps): -S - T <= h - (1/vol) log(eps y_c) <= S."""
    _check_in_disc(eps, y_c)
    log_term = math.log(eps * y_c) / volume
    return Interval(-S - T_eps + log_term, S + log_term)


# ---------------------------------------------------------------------------
# Regimes and the global bound
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Assembly:
    S: float
    lower: float
    T: Dict[str, Tuple[float, float]]
    tilde: Dict[str, Tuple[float, float]]
    regime_a: Interval
    regime_b: Interval
    regime_c: Interval
    regime_d_by_cusp: Dict[str, Interval]


def _assemble(params: BoundParams) -> _Assembly:
    S = spectral_constant_S(params.eta, params.C, params.zeta)
    lower = params.A - 2.0 * S - params.zeta / params.eta
    T = {
        ce.cusp.label: (
            cusp_term_T(params.sup_F_Y, params.genus, ce.eps),
            cusp_term_T(params.sup_F_Y, params.genus, ce.eps_prime),
        )
        for ce in params.cusps
    }
    tilde = {
        ce.cusp.label: tilde_constants(params.A, params.B, params.minus_one_count, ce.eps_prime, params.delta)
        for ce in params.cusps
    }
    small = sorted((t for t, _ in T.values()), reverse=True)
    # Distinct cusps; with a single cusp both points share it
    pair = small[0] + (small[1] if len(small) > 1 else small[0])
    top = params.B + 2.0 * S
    regime_d_by_cusp = {
        label: Interval(tilde[label][0] - 2.0 * S - params.zeta / params.eta,
                        tilde[label][1] + 2.0 * S + 2.0 * T[label][1])
        for label in T
    }
    return _Assembly(
        S=S,
        lower=lower,
        T=T,
        tilde=tilde,
        regime_a=Interval(lower, top),
        regime_b=Interval(lower, top + small[0]),
        regime_c=Interval(lower, top + pair),
        regime_d_by_cusp=regime_d_by_cusp,
    )


def _global_upper_bounds(params: BoundParams, assembly: _Assembly) -> Dict[str, float]:
    """Upper bounds for gr^can itself in each regime."""
    regime_d = max(
        assembly.regime_d_by_cusp[ce.cusp.label].hi + q_term_bound(params.minus_one_count, ce.eps_prime)
        for ce in params.cusps
    )
    return {
        "a": assembly.regime_a.hi,
        "b": assembly.regime_b.hi,
        "c": assembly.regime_c.hi,
        "d": regime_d,
    }


def global_sup_bound(params: BoundParams, level: int) -> Polynomial:
    """Coefficients (c0, c1, c2) of a quadratic in n dominating every regime upper bound.

    Uses m_c <= n, so eps_c <= n eps and eps'_c <= n eps' for the unit
    parameters of delta, and zeta <= zeta0 + kappa n^2/g with
    kappa = (eps/2pi)^2 sup_Y F. In regime (d) the term
    m (1/2pi) log|q_c(z) - q_c(w)| is at most m (1/2pi)(log 2 - 2pi/eps'_c),
    which together with the tilde constants stays below m log 2/(2pi).

    Raises:
        AdmissibilityError: If a cusp is wider than the level.
        CertificationError: If the polynomial at the level falls below a regime bound.
    """
    if level < 1:
        raise DomainError(f"level must be >= 1, got {level}")
    if any(ce.cusp.width > level for ce in params.cusps):
        raise AdmissibilityError(f"cusp width exceeds level {level}")
    eps, eps_prime = unit_epsilons(params.delta)
    g = params.genus
    M = spectral_constant_M(params.eta, params.C)
    kappa = (eps / (2.0 * math.pi)) ** 2 * params.sup_F_Y
    zeta0 = max(params.sup_F_Y / g, params.zeta - kappa * level * level / g)
    m = params.minus_one_count

    c0 = params.B + 2.0 * math.sqrt(M * zeta0) + m * LOG2_OVER_2PI
    c1 = 2.0 * math.sqrt(M * kappa / g) + m * eps_prime * r_delta(params.delta)
    c2 = 2.0 * (eps_prime / FOUR_PI) ** 2 * params.sup_F_Y / g
    poly = (c0, c1, c2)

    value = c0 + c1 * level + c2 * level * level
    bounds = _global_upper_bounds(params, _assemble(params))
    worst = max(bounds, key=bounds.get)
    if value < bounds[worst] - 1e-9 * abs(bounds[worst]):
        logger.error("Polynomial %s at n=%d is %s, below regime %s bound %s", poly, level, value, worst, bounds[worst])
        raise CertificationError(f"global polynomial does not dominate regime ({worst}) at n={level}")
    logger.debug("Global polynomial %s; at n=%d: %s >= %s", poly, level, value, bounds[worst])
    return poly


def regime_bounds(params: BoundParams) -> BoundReport:
    """Constants, one interval per regime and the global polynomial."""
    assembly = _assemble(params)
    regime_d = Interval(
        min(i.lo for i in assembly.regime_d_by_cusp.values()),
        max(i.hi for i in assembly.regime_d_by_cusp.values()),
    )
    report = BoundReport(
        S=assembly.S,
        r_delta=r_delta(params.delta),
        T_by_cusp=assembly.T,
        tilde_by_cusp=assembly.tilde,
        regime_a=assembly.regime_a,
        regime_b=assembly.regime_b,
        regime_c=assembly.regime_c,
        regime_d=regime_d,
        global_sup_polynomial=global_sup_bound(params, params.level),
        regime_d_by_cusp=assembly.regime_d_by_cusp,
        int_h=int_h_interval(params.zeta, params.eta),
        inputs={
            "delta": params.delta,
            "eta": params.eta,
            "A": params.A,
            "B": params.B,
            "C": params.C,
            "sup_F_Y": params.sup_F_Y,
            "sup_F_X": params.sup_F_X,
            "zeta": params.zeta,
            "genus_used": params.genus,
            "volume": params.volume,
            "minus_one_count": params.minus_one_count,
        },
        level=params.level,
    )
    logger.info("Assembled bounds: S=%.4f, regime (a) [%.1f, %.1f]", report.S, report.regime_a.lo, report.regime_a.hi)
    return report


def theorem_presentation(poly: Polynomial) -> Dict[str, str]:
    """Display form of the global polynomial at two significant figures.

    The constant term is rounded to nearest, the n and n^2 coefficients
    upward.
    """
    c0, c1, c2 = poly
    constant = round_sig(c0, 2)
    exponent = math.floor(math.log10(abs(constant))) if constant else 0
    if abs(exponent) >= 4:
        constant_text = f"{constant / 10.0 ** exponent:g}·10^{exponent}"
    else:
        constant_text = f"{constant:g}"
    linear_text = f"{round_up_sig(c1, 2):g}"
    quadratic_text = f"{round_up_sig(c2, 2):g}"
    return {
        "constant": constant_text,
        "linear": linear_text,
        "quadratic": quadratic_text,
        "statement": f"{constant_text} + {linear_text}n + {quadratic_text}n^2",
    }


# ---------------------------------------------------------------------------
# Pointwise classification
# ---------------------------------------------------------------------------

def _small_disc(location: CuspLocation, params: BoundParams) -> Optional[CuspEpsilons]:
    for ce in params.cusps:
        if location.in_disc(ce.cusp, ce.eps):
            return ce
    return None


def _large_disc(location: CuspLocation, params: BoundParams) -> Optional[CuspEpsilons]:
    for ce in params.cusps:
        if location.in_disc(ce.cusp, ce.eps_prime):
            return ce
    return None


def pointwise_bound(
    params: BoundParams,
    report: BoundReport,
    spec: GroupSpec,
    z: UhpPoint,
    w: UhpPoint,
) -> Tuple[str, Interval]:
    """Classify (z, w) into a regime and enclose gr^can(z, w).

    Both points in one enlarged disc gives regime (d); points in the small
    discs of two distinct cusps regime (c); one point in a small disc
    regime (b); otherwise regime (a).

    Raises:
        OrbitCoincidenceError: If w lies in the orbit of z.
        UnsupportedFamilyError: If the cusps of spec are only known by width.
    """
    loc_z, loc_w = locate_point(spec, z), locate_point(spec, w)
    big_z, big_w = _large_disc(loc_z, params), _large_disc(loc_w, params)
    if big_z is not None and big_w is not None and big_z.cusp.label == big_w.cusp.label:
        gap = abs(loc_z.q - loc_w.q)
        if gap == 0.0:
            raise OrbitCoincidenceError("z and w have the same cusp coordinate")
        offset = params.minus_one_count * math.log(gap) / (2.0 * math.pi)
        return "d", report.regime_d_by_cusp[big_z.cusp.label].shifted(offset)

    small_z, small_w = _small_disc(loc_z, params), _small_disc(loc_w, params)
    if small_z is not None and small_w is not None and small_z.cusp.label != small_w.cusp.label:
        top = report.regime_a.hi + report.T_by_cusp[small_z.cusp.label][0] + report.T_by_cusp[small_w.cusp.label][0]
        return "c", Interval(report.regime_c.lo, top)
    single = small_z or small_w
    if single is not None:
        return "b", Interval(report.regime_b.lo, report.regime_a.hi + report.T_by_cusp[single.cusp.label][0])

    excess = singular_sum(spec, z, w, params.delta)
    return "a", report.regime_a.shifted(-excess)

