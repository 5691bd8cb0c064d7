"""Orchestrator for the worked example bound of congruence subgroups.

The pipeline defaults to delta = 2, eta = 975/4096 and a = 1.44, obtains the
two lattice point suprema (the published 226 and 58, which hold for exactly
those defaults, or certified grid values over the strip for the chosen
delta), derives C, the F_Gamma bounds and zeta, and assembles the full report.
"""

import logging
import time
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .bounds.f_bound import ExtensionMode, FBoundResult, compute_f_bounds, zeta_bound
from .bounds.green_assembly import (
    BoundParams,
    BoundReport,
    c_from_pointcount,
    kim_sarnak_eta,
    regime_bounds,
)
from .core.modular_group import (
    Family,
    GroupSpec,
    admissible_epsilons,
    discs_disjoint,
    genus,
    minus_one_count,
    unit_epsilons,
    volume,
)
from .counting.grid_evaluator import GridConfig
from .counting.point_counting import CountCertificate, sup_count_Y0
from .errors import AdmissibilityError, DomainError, GenusZeroError

logger = logging.getLogger(__name__)

# Threshold of the point count defining C
C_THRESHOLD = 17.0
PAPER_SUP_N17 = 226
PAPER_SUP_N_INTERIOR = 58
DEFAULT_A = -3.00e4
DEFAULT_B = 1.58e4
DEFAULT_INTERIOR_A = 1.44
DEFAULT_DELTA = 2.0
DEFAULT_GRID_STEP = 0.01
# Intermediate constants are rounded up to this many significant figures
ROUNDING_DIGITS = 3
# Sample points per cusp in the disc disjointness spot check
DISJOINT_SAMPLES = 2


class ConstantsMode(str, Enum):
    PAPER = "paper"
    COMPUTED = "computed"


@dataclass
class PipelineOptions:
    """Options for the worked example pipeline.

    counts_17 and counts_interior replace the point-count suprema at
    thresholds 17 and 2a^2 - 1 (for instance with the values of an earlier
    certified run); their provenance is then "computed".
    """

    constants_mode: ConstantsMode = ConstantsMode.PAPER
    grid_step: float = DEFAULT_GRID_STEP
    workers: int = 1
    extension: ExtensionMode = ExtensionMode.COARSE
    # Divide by the true genus instead of the coarse g >= 1
    use_genus: bool = False
    A: float = DEFAULT_A
    B: float = DEFAULT_B
    a: float = DEFAULT_INTERIOR_A
    delta: float = DEFAULT_DELTA
    counts_17: Optional[int] = None
    counts_interior: Optional[int] = None

    def __post_init__(self):
        self.constants_mode = ConstantsMode(self.constants_mode)
        self.extension = ExtensionMode(self.extension)
        if not self.a > 1.0:
            raise DomainError(f"interior parameter a must exceed 1, got {self.a}")
        if not self.delta > 1.0:
            raise DomainError(f"delta must exceed 1, got {self.delta}")
        if self.A > self.B:
            raise DomainError(f"A={self.A} exceeds B={self.B}")

    @property
    def interior_threshold(self) -> float:
        return 2.0 * self.a * self.a - 1.0

    @property
    def published_counts_apply(self) -> bool:
        """The published suprema were counted on Y0 for delta = 2 at thresholds 17 and 2(1.44)^2 - 1."""
        return self.delta == DEFAULT_DELTA and self.a == DEFAULT_INTERIOR_A

    @property
    def provenance(self) -> str:
        if (
            self.constants_mode is ConstantsMode.COMPUTED
            or self.counts_17 is not None
            or self.counts_interior is not None
            or not self.published_counts_apply
        ):
            return ConstantsMode.COMPUTED.value
        return ConstantsMode.PAPER.value


class BoundPipeline:
    """Runs the worked example for one congruence subgroup.

    Stages:
    1. Check the genus and compute the cusp disc parameters
    2. Obtain the point-count suprema
    3. Derive C and the F_Gamma bounds
    4. Assemble the regime bounds and the global polynomial
    """

    def __init__(self, spec: GroupSpec, options: Optional[PipelineOptions] = None):
        self.spec = spec
        self.options = options or PipelineOptions()
        self.certificates = {}
        logger.info(
            "Initialized BoundPipeline: group=%s, constants=%s, extension=%s",
            spec.label,
            self.options.constants_mode.value,
            self.options.extension.value,
        )

    def _point_count(self, threshold: float, paper_value: int, override: Optional[int], published: bool) -> int:
        opts = self.options
        if override is not None:
            logger.info("Using supplied count %d at threshold %s", override, threshold)
            return override
        if opts.constants_mode is ConstantsMode.PAPER:
            if published:
                return paper_value
            logger.warning(
                "Published count at threshold %s does not apply to delta=%s, a=%s; certifying on the grid",
                threshold, opts.delta, opts.a,
            )
        certificate: CountCertificate = sup_count_Y0(
            threshold, opts.grid_step, GridConfig(workers=opts.workers), delta=opts.delta
        )
        self.certificates[threshold] = certificate
        return certificate.certified_sup

    def f_bounds(self, g_used: int) -> FBoundResult:
        opts = self.options
        N = self._point_count(
            opts.interior_threshold, PAPER_SUP_N_INTERIOR, opts.counts_interior, opts.published_counts_apply
        )
        eps_unit, _ = unit_epsilons(opts.delta)
        return compute_f_bounds(
            opts.a,
            N,
            self.spec.level,
            eps_unit,
            genus=g_used,
            cusp_eps=admissible_epsilons(self.spec, opts.delta),
            extension=opts.extension,
            round_digits=ROUNDING_DIGITS,
        )

    def run(self) -> BoundReport:
        logger.info("Starting bound pipeline for %s", self.spec.label)
        start_time = time.time()
        opts = self.options

        g = genus(self.spec)
        if g < 1:
            logger.error("%s has genus zero", self.spec.label)
            raise GenusZeroError(f"genus zero: {self.spec.label} has no canonical Green function")
        g_used = g if opts.use_genus else 1

        try:
            cusp_eps = admissible_epsilons(self.spec, opts.delta)
            if not discs_disjoint(self.spec, cusp_eps, samples=DISJOINT_SAMPLES):
                raise AdmissibilityError(f"enlarged cusp discs of {self.spec.label} overlap at delta={opts.delta}")
            N17 = self._point_count(C_THRESHOLD, PAPER_SUP_N17, opts.counts_17, opts.delta == DEFAULT_DELTA)
            C = c_from_pointcount(N17, round_up=True)
            f = self.f_bounds(g_used)
            logger.info("C=%s, sup_Y F <= %s, sup_X F <= %s, zeta <= %s", C, f.sup_Y, f.sup_X, f.zeta)

            params = BoundParams(
                delta=opts.delta,
                eta=kim_sarnak_eta(),
                A=opts.A,
                B=opts.B,
                C=C,
                sup_F_Y=f.sup_Y,
                sup_F_X=f.sup_X,
                genus=g_used,
                volume=volume(self.spec),
                zeta=f.zeta,
                minus_one_count=minus_one_count(self.spec),
                cusps=tuple(cusp_eps),
                level=self.spec.level,
            )
            report = regime_bounds(params)
        except Exception as e:
            logger.exception("Bound pipeline failed for %s: %s", self.spec.label, str(e))
            raise

        inputs = dict(report.inputs)
        inputs.update(
            genus=g,
            zeta_genus=zeta_bound(f.sup_X, g),
            a=opts.a,
            sup_N17=N17,
            sup_N_interior=f.N_used,
            C_raw=c_from_pointcount(N17),
        )
        report = replace(report, inputs=inputs, provenance=opts.provenance, group=self.spec.label)
        logger.info("Bound pipeline for %s finished in %.2fs", self.spec.label, time.time() - start_time)
        return report


def example_pipeline(level: int, family: Family = Family.GAMMA0, options: Optional[PipelineOptions] = None) -> BoundReport:
    """Worked example bound for the congruence subgroup family(level).

    Raises:
        GenusZeroError: If the curve has genus zero.
    """
    return BoundPipeline(GroupSpec(family, level), options).run()
