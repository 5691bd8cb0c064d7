import pytest

from green_bounds.bounds.f_bound import ExtensionMode
from green_bounds.core.hyperbolic import UhpPoint
from green_bounds.core.modular_group import Family, GroupSpec, genus
from green_bounds.counting.point_counting import count_orbit
from green_bounds.errors import AdmissibilityError, DomainError, GenusZeroError
from green_bounds.pipeline import (
    C_THRESHOLD,
    BoundPipeline,
    ConstantsMode,
    PipelineOptions,
    example_pipeline,
)


def test_worked_example_gamma0_11() -> None:
    report = example_pipeline(11)
    assert report.provenance == "paper"
    assert report.group == "gamma0(11)"
    assert report.inputs["C"] == 137.0
    assert report.inputs["C_raw"] == pytest.approx(136.199, abs=1e-3)
    assert report.inputs["sup_F_Y"] == 25.7
    assert report.inputs["zeta"] == 25.7
    assert report.inputs["genus"] == 1
    assert report.S == pytest.approx(172.10, abs=0.01)
    assert report.regime_a.hi == pytest.approx(16144.2, abs=0.1)
    assert report.int_h.lo == pytest.approx(-107.966, abs=1e-3)
    assert set(report.T_by_cusp) == {"∞", "0"}


def test_global_polynomial_matches_published_form() -> None:
    c0, c1, c2 = example_pipeline(11).global_sup_polynomial
    assert c0 == pytest.approx(1.6e4, rel=0.01)
    assert c1 == pytest.approx(7.626, abs=1e-3)
    assert c2 == pytest.approx(0.08722, abs=1e-4)


def test_genus_zero_is_rejected() -> None:
    with pytest.raises(GenusZeroError, match="genus zero"):
        example_pipeline(10)
    with pytest.raises(GenusZeroError):
        example_pipeline(5, Family.GAMMA1)


def test_true_genus_tightens_zeta() -> None:
    coarse = example_pipeline(37)
    sharp = example_pipeline(37, options=PipelineOptions(use_genus=True))
    assert sharp.inputs["genus_used"] == 2
    assert sharp.inputs["zeta"] == pytest.approx(coarse.inputs["zeta"] / 2.0)
    assert sharp.regime_a.hi < coarse.regime_a.hi
    assert coarse.inputs["zeta_genus"] == pytest.approx(sharp.inputs["zeta"])


def test_large_level_extends_sup_to_cusps() -> None:
    report = example_pipeline(100)
    assert report.inputs["sup_F_X"] == pytest.approx(125.24, abs=0.01)
    widths = example_pipeline(100, options=PipelineOptions(extension=ExtensionMode.SHARP))
    assert widths.inputs["sup_F_X"] < report.inputs["sup_F_X"]
    assert report.polynomial_at(100) >= max(i.hi for i in report.intervals().values())


def test_gamma1_uses_width_only_cusps() -> None:
    report = example_pipeline(13, Family.GAMMA1)
    assert report.group == "gamma1(13)"
    assert report.inputs["minus_one_count"] == 1
    assert all(label.startswith("cusp") for label in report.T_by_cusp)


def test_supplied_counts_mark_provenance_computed() -> None:
    paper = example_pipeline(11)
    supplied = example_pipeline(11, options=PipelineOptions(counts_17=226, counts_interior=58))
    assert supplied.provenance == "computed"
    assert supplied.regime_a == paper.regime_a
    larger = example_pipeline(11, options=PipelineOptions(counts_17=260))
    assert larger.inputs["C"] > paper.inputs["C"]


def test_computed_constants_store_certificates() -> None:
    pipeline = BoundPipeline(
        GroupSpec(Family.GAMMA0, 11),
        PipelineOptions(constants_mode=ConstantsMode.COMPUTED, grid_step=0.05),
    )
    report = pipeline.run()
    assert report.provenance == "computed"
    certificate = pipeline.certificates[C_THRESHOLD]
    assert report.inputs["sup_N17"] == certificate.certified_sup >= 196
    assert report.inputs["sup_N_interior"] == pipeline.certificates[pipeline.options.interior_threshold].certified_sup


def test_options_validation() -> None:
    with pytest.raises(DomainError):
        PipelineOptions(a=1.0)
    with pytest.raises(DomainError):
        PipelineOptions(delta=0.5)
    with pytest.raises(DomainError):
        PipelineOptions(A=2.0e4)
    with pytest.raises(ValueError):
        PipelineOptions(constants_mode="guessed")
    assert PipelineOptions().interior_threshold == pytest.approx(3.1472)


def _positive_genus_levels(family: Family, top: int):
    return [n for n in range(1, top + 1) if genus(GroupSpec(family, n)) >= 1]


def test_reports_valid_for_gamma0_levels() -> None:
    for level in _positive_genus_levels(Family.GAMMA0, 200):
        report = example_pipeline(level)
        assert all(i.lo <= i.hi for i in report.intervals().values())
        assert report.regime_a.hi <= report.regime_b.hi <= report.regime_c.hi
        assert report.int_h.hi == 0.0


@pytest.mark.slow
def test_reports_valid_for_gamma1_levels() -> None:
    for level in _positive_genus_levels(Family.GAMMA1, 200):
        report = example_pipeline(level, Family.GAMMA1)
        assert all(i.lo <= i.hi for i in report.intervals().values())


def test_larger_delta_counts_over_the_taller_strip() -> None:
    options = PipelineOptions(delta=3.0, grid_step=0.05)
    assert not options.published_counts_apply
    assert options.provenance == "computed"
    pipeline = BoundPipeline(GroupSpec(Family.GAMMA0, 11), options)
    report = pipeline.run()
    assert report.provenance == "computed"
    top = UhpPoint(0.0, 14.06)
    assert report.inputs["sup_N_interior"] >= count_orbit(GroupSpec(Family.FULL), top, options.interior_threshold)
    assert report.inputs["sup_N17"] >= count_orbit(GroupSpec(Family.FULL), top, C_THRESHOLD)
    assert all(c.delta == 3.0 for c in pipeline.certificates.values())


def test_published_counts_only_for_their_parameters() -> None:
    assert PipelineOptions().published_counts_apply
    assert PipelineOptions(a=1.5).provenance == "computed"
    assert PipelineOptions(counts_interior=58).provenance == "computed"
    supplied = example_pipeline(11, options=PipelineOptions(delta=3.0, counts_17=400, counts_interior=130))
    assert supplied.inputs["sup_N17"] == 400
    assert supplied.provenance == "computed"


def test_pipeline_rejects_overlapping_discs(monkeypatch) -> None:
    monkeypatch.setattr("green_bounds.pipeline.discs_disjoint", lambda spec, cusp_eps, samples: False)
    with pytest.raises(AdmissibilityError, match="overlap"):
        example_pipeline(11)
