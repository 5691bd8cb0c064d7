import math

import pytest

from green_bounds.bounds.f_bound import (
    ExtensionMode,
    FBoundResult,
    compute_f_bounds,
    f_cusp_bound,
    f_cusp_extension_factor,
    f_sup_bound_interior,
    f_sup_bound_X,
    f_sup_bound_X_by_cusp,
    zeta_bound,
)
from green_bounds.bounds.rounding import round_down_sig, round_sig, round_up_sig
from green_bounds.core.modular_group import Family, GroupSpec, admissible_epsilons, unit_epsilons
from green_bounds.errors import DomainError, GenusZeroError


def test_interior_bound_worked_example() -> None:
    assert f_sup_bound_interior(1.44, 58) == pytest.approx(25.68, abs=0.01)
    assert round_up_sig(f_sup_bound_interior(1.44, 58), 3) == 25.7


def test_interior_bound_at_larger_radius() -> None:
    assert f_sup_bound_interior(3.0, 58) == pytest.approx(9.608, rel=1e-3)


def test_interior_bound_factor_is_minimized_near_8_84() -> None:
    def factor(a: float) -> float:
        return f_sup_bound_interior(a, 1)

    best = min((1.5 + 0.01 * i for i in range(1500)), key=factor)
    assert best == pytest.approx(8.84, abs=0.02)


def test_interior_bound_validation() -> None:
    with pytest.raises(DomainError):
        f_sup_bound_interior(1.0, 58)
    with pytest.raises(DomainError):
        f_sup_bound_interior(1.44, 0)


def test_extension_factor() -> None:
    assert f_cusp_extension_factor(0.5) == 1.0
    assert f_cusp_extension_factor(2.0 * math.pi) == 1.0
    assert f_cusp_extension_factor(4.0 * math.pi) == pytest.approx(4.0 / math.e)
    # never exceeds the coarse factor max(1, (eps/2pi)^2)
    for eps in (7.0, 12.0, 50.0, 300.0):
        assert f_cusp_extension_factor(eps) <= (eps / (2.0 * math.pi)) ** 2


def test_cusp_bound_decays_into_the_cusp() -> None:
    eps = 1.5
    at_boundary = f_cusp_bound(10.0, eps, 1.0 / eps)
    assert at_boundary == pytest.approx(10.0)
    assert f_cusp_bound(10.0, eps, 2.0) < at_boundary
    assert f_cusp_bound(10.0, eps, 10.0) < f_cusp_bound(10.0, eps, 2.0)
    with pytest.raises(DomainError):
        f_cusp_bound(10.0, eps, 0.5)


def test_cusp_bound_respects_extension_factor() -> None:
    eps = 20.0
    factor = f_cusp_extension_factor(eps)
    samples = [f_cusp_bound(1.0, eps, 1.0 / eps + 0.001 * i) for i in range(2000)]
    assert max(samples) <= factor * (1.0 + 1e-9)
    assert max(samples) == pytest.approx(factor, rel=1e-3)


def test_sup_X_coarse() -> None:
    eps, _ = unit_epsilons(2.0)
    assert f_sup_bound_X(25.7, 11, eps) == 25.7
    assert f_sup_bound_X(25.7, 100, eps) == pytest.approx(125.24, abs=0.01)


def test_sup_X_by_cusp_modes_are_ordered() -> None:
    spec = GroupSpec(Family.GAMMA0, 100)
    cusp_eps = admissible_epsilons(spec, 2.0)
    eps, _ = unit_epsilons(2.0)
    coarse = f_sup_bound_X(25.7, 100, eps)
    widths = f_sup_bound_X_by_cusp(25.7, cusp_eps, ExtensionMode.WIDTHS)
    sharp = f_sup_bound_X_by_cusp(25.7, cusp_eps, ExtensionMode.SHARP)
    assert 25.7 <= sharp <= widths <= coarse * (1.0 + 1e-12)


def test_zeta_bound() -> None:
    assert zeta_bound(25.7, 1) == 25.7
    assert zeta_bound(25.7, 2) == pytest.approx(12.85)
    with pytest.raises(GenusZeroError, match="positive genus required"):
        zeta_bound(25.7, 0)


def test_compute_f_bounds_chain() -> None:
    eps, _ = unit_epsilons(2.0)
    result = compute_f_bounds(1.44, 58, 11, eps, round_digits=3)
    assert (result.sup_Y, result.sup_X, result.zeta) == (25.7, 25.7, 25.7)
    unrounded = compute_f_bounds(1.44, 58, 11, eps)
    assert unrounded.sup_Y < result.sup_Y


def test_compute_f_bounds_with_genus_and_widths() -> None:
    spec = GroupSpec(Family.GAMMA0, 37)
    eps, _ = unit_epsilons(2.0)
    result = compute_f_bounds(
        1.44, 58, 37, eps, genus=2, cusp_eps=admissible_epsilons(spec, 2.0),
        extension=ExtensionMode.WIDTHS, round_digits=3,
    )
    assert result.zeta == pytest.approx(result.sup_X / 2.0)


def test_result_invariants() -> None:
    with pytest.raises(DomainError):
        FBoundResult(a=1.44, N_used=58, sup_Y=30.0, sup_X=25.0, zeta=10.0)
    with pytest.raises(DomainError):
        FBoundResult(a=1.44, N_used=58, sup_Y=20.0, sup_X=25.0, zeta=26.0)


@pytest.mark.parametrize(
    "x, up, down",
    [
        (136.199, 137.0, 136.0),
        (25.68, 25.7, 25.6),
        (15800.0, 15800.0, 15800.0),
        (-30452.17, -30400.0, -30500.0),
        (0.1, 0.1, 0.1),
        (0.0031311, 0.00314, 0.00313),
    ],
)
def test_rounding_is_outward(x: float, up: float, down: float) -> None:
    assert round_up_sig(x, 3) == up
    assert round_down_sig(x, 3) == down
    assert round_down_sig(x, 3) <= x <= round_up_sig(x, 3)


@pytest.mark.parametrize("x", [25.7, 137.0, 0.1, 15800.0, -30400.0, 0.00314])
def test_rounding_never_moves_inward_near_representable_values(x: float) -> None:
    above = math.nextafter(x, math.inf)
    below = math.nextafter(x, -math.inf)
    assert round_up_sig(above, 3) > x
    assert round_down_sig(below, 3) < x
    assert round_up_sig(x, 3) == x == round_down_sig(x, 3)


def test_round_to_nearest() -> None:
    assert round_sig(16144.42, 2) == 16000.0
    assert round_sig(0.08722, 2) == 0.087
    with pytest.raises(ValueError):
        round_up_sig(1.0, 0)
