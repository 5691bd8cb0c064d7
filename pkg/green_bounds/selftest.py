"""Golden checks of the worked example constants.

Each check recomputes one published or derived constant and compares it with
its expected value; the self test passes iff every check does.
"""

import logging
import time
from dataclasses import dataclass
from typing import Callable, List, Tuple

from .bounds.f_bound import f_sup_bound_interior
from .bounds.green_assembly import (
    c_from_pointcount,
    cusp_term_T,
    kim_sarnak_eta,
    r_delta,
    spectral_constant_S,
    theorem_presentation,
)
from .core.hyperbolic import UhpPoint
from .core.modular_group import Family, GroupSpec, genus, unit_epsilons
from .core.shc_transform import RadialKernel, legendre_P, shc_transform, shc_weight2_indicator
from .counting.grid_evaluator import lattice_counts
from .counting.point_counting import count_orbit, count_orbit_bruteforce, required_entry_bound, sup_count_Y0
from .pipeline import example_pipeline

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _close(value: float, expected: float, tol: float) -> Tuple[bool, str]:
    return abs(value - expected) <= tol, f"{value:.6g} (expected {expected:g} ± {tol:g})"


def _within(value: float, lo: float, hi: float) -> Tuple[bool, str]:
    return lo <= value <= hi, f"{value:.6g} (expected in [{lo:g}, {hi:g}])"


def _check_eta():
    return _close(kim_sarnak_eta() * 4096.0, 975.0, 0.0)


def _check_C():
    ok, detail = _close(c_from_pointcount(226), 136.20, 0.01)
    return ok and c_from_pointcount(226, round_up=True) == 137.0, detail + ", rounded up to 137"


def _check_epsilons():
    eps, eps_prime = unit_epsilons(2.0)
    ok1, d1 = _close(eps, 0.1387, 1e-4)
    ok2, d2 = _close(eps_prime, 0.5176, 1e-4)
    return ok1 and ok2, f"eps {d1}; eps' {d2}"


def _check_sup_Y():
    return _close(f_sup_bound_interior(1.44, 58), 25.68, 0.01)


def _check_S():
    return _close(spectral_constant_S(kim_sarnak_eta(), 137.0, 25.7), 172.1, 0.2)


def _check_T():
    eps, eps_prime = unit_epsilons(2.0)
    ok1, d1 = _close(cusp_term_T(25.7, 1, eps), 0.00313, 1e-5)
    ok2, d2 = _close(cusp_term_T(25.7, 1, eps_prime), 0.0436, 1e-4)
    return ok1 and ok2, f"T(eps)/n^2 {d1}; T(eps')/n^2 {d2}"


def _check_tilde_slope():
    _, eps_prime = unit_epsilons(2.0)
    return _close(2 * eps_prime * r_delta(2.0), 0.0279, 0.0002)


def _check_transform():
    kernel = RadialKernel.indicator(1.44)
    return _close(shc_transform(kernel, 0.0, 2.0), shc_weight2_indicator(1.44), 1e-8)


def _check_legendre():
    worst = max(abs(legendre_P(0.0, 2.0, u) - 2.0 / (u + 1.0)) for u in (1.0, 2.5, 10.0, 100.0))
    return worst <= 1e-14, f"max deviation {worst:.3g}"


def _check_counts():
    i = UhpPoint(0.0, 1.0)
    full = GroupSpec(Family.FULL)
    direct = count_orbit(full, i, 17.0)
    vectorized = int(lattice_counts([0.0], 1.0, 17.0)[0])
    oracle = count_orbit_bruteforce(full, i, 17.0, required_entry_bound(i, 17.0))
    return direct == vectorized == oracle == 196, f"N(i, 17) = {direct}, {vectorized}, {oracle} (expected 196)"


def _check_genus():
    values = (genus(GroupSpec(Family.GAMMA0, 10)), genus(GroupSpec(Family.GAMMA0, 11)))
    return values == (0, 1), f"genus gamma0(10), gamma0(11) = {values}"


def _check_certificate():
    return _within(sup_count_Y0(3.1472, 0.05).certified_sup, 58, 68)


def _check_pipeline():
    report = example_pipeline(11)
    ok, detail = _close(report.regime_a.hi, 16144.2, 1.0)
    return ok and report.provenance == "paper", f"regime (a) upper bound {detail}"


def _check_polynomial():
    c0, c1, c2 = example_pipeline(11).global_sup_polynomial
    ok = abs(c0 - 1.6e4) <= 0.01 * 1.6e4 and 7.7 * 0.97 <= c1 <= 7.7 and 0.088 * 0.97 <= c2 <= 0.088
    statement = theorem_presentation((c0, c1, c2))["statement"]
    return ok and statement == "1.6·10^4 + 7.7n + 0.088n^2", f"({c0:.6g}, {c1:.4g}, {c2:.4g}) -> {statement}"


GOLDEN_CHECKS: List[Tuple[str, Callable[[], Tuple[bool, str]]]] = [
    ("spectral gap 975/4096", _check_eta),
    ("C from sup N(., 17) = 226", _check_C),
    ("unit disc parameters at delta=2", _check_epsilons),
    ("sup_Y F at a=1.44, N=58", _check_sup_Y),
    ("S at C=137, zeta=25.7", _check_S),
    ("cusp terms T(eps), T(eps')", _check_T),
    ("tilde constant slope", _check_tilde_slope),
    ("weight-2 transform closed form", _check_transform),
    ("Legendre P_{0,2} closed form", _check_legendre),
    ("lattice count at i", _check_counts),
    ("genus gate", _check_genus),
    ("certified count at b=3.1472", _check_certificate),
    ("gamma0(11) regime (a)", _check_pipeline),
    ("global polynomial", _check_polynomial),
]


def run_selftest() -> List[CheckResult]:
    start_time = time.time()
    results = []
    for name, check in GOLDEN_CHECKS:
        try:
            passed, detail = check()
        except Exception as e:
            logger.exception("Golden check %r raised", name)
            passed, detail = False, f"raised {type(e).__name__}: {e}"
        results.append(CheckResult(name, bool(passed), detail))
        logger.debug(results[-1].line())
    failed = sum(not r.passed for r in results)
    logger.info("Self test: %d/%d checks passed in %.2fs", len(results) - failed, len(results), time.time() - start_time)
    return results
