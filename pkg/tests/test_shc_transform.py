import math

import mpmath
import numpy as np
import pytest
from scipy import integrate, special

from green_bounds.core.shc_transform import (
    KernelKind,
    RadialKernel,
    legendre_P,
    shc_transform,
    shc_weight2_indicator,
)
from green_bounds.errors import DomainError, NonConvergentSeriesError


def _reference_P(s: float, k: float, u: float) -> float:
    return (2.0 / (u + 1.0)) ** s * special.hyp2f1(s - k / 2.0, s + k / 2.0, 1.0, (u - 1.0) / (u + 1.0))


@pytest.mark.parametrize("s, k", [(0.0, 2.0), (0.25, 0.0), (0.5, 1.0), (1.3, 2.0), (2.0, 4.0), (0.7, 6.0)])
@pytest.mark.parametrize("u", [1.0, 1.2, 2.0, 3.5, 8.0])
def test_legendre_matches_scipy(s: float, k: float, u: float) -> None:
    assert legendre_P(s, k, u) == pytest.approx(_reference_P(s, k, u), rel=1e-11, abs=1e-14)


@pytest.mark.parametrize("s", [0.3, 0.75, 1.6])
@pytest.mark.parametrize("u", [1.5, 3.0, 10.0])
def test_weight_zero_is_classical_legendre(s: float, u: float) -> None:
    # P_{s,0} = P_{-s} = P_{s-1}
    assert legendre_P(s, 0.0, u) == pytest.approx(float(mpmath.legendre(s - 1.0, u)), rel=1e-11)


def test_closed_form_cases() -> None:
    for u in (1.0, 2.5, 10.0, 100.0, 1e4):
        assert legendre_P(0.0, 2.0, u) == pytest.approx(2.0 / (u + 1.0), rel=1e-14)
    for u in (1.0, 2.5, 10.0):
        assert legendre_P(1.0, 0.0, u) == pytest.approx(1.0, rel=1e-12)
        assert legendre_P(2.0, 0.0, u) == pytest.approx(u, rel=1e-12)


def test_legendre_domain() -> None:
    with pytest.raises(DomainError):
        legendre_P(0.5, 0.0, 0.9)
    with pytest.raises(DomainError):
        legendre_P(0.5, 0.0, 2.0, tol=0.0)


def test_slow_series_raises() -> None:
    with pytest.raises(NonConvergentSeriesError):
        legendre_P(0.5, 0.0, 1e6)


@pytest.mark.parametrize("a", [1.1, 1.44, 2.0, 5.0])
def test_indicator_weight2_closed_form(a: float) -> None:
    kernel = RadialKernel.indicator(a)
    assert shc_transform(kernel, 0.0, 2.0) == pytest.approx(shc_weight2_indicator(a), abs=1e-8)


def test_indicator_general_parameters() -> None:
    kernel = RadialKernel.indicator(3.0)
    for s, k in ((0.5, 0.0), (0.8, 2.0), (0.25, 4.0)):
        reference, _ = integrate.quad(lambda u: _reference_P(s, k, u), 1.0, 3.0, epsabs=1e-13)
        assert shc_transform(kernel, s, k) == pytest.approx(2.0 * math.pi * reference, rel=1e-8)


def test_sampled_hat_kernel() -> None:
    kernel = RadialKernel.sampled([1.0, 2.0], [1.0, 0.0])
    expected = 4.0 * math.pi * (3.0 * math.log(1.5) - 1.0)
    assert shc_transform(kernel, 0.0, 2.0) == pytest.approx(expected, abs=1e-8)
    assert expected == pytest.approx(2.7194, abs=1e-4)


def test_sampled_indicator_converges_to_closed_form() -> None:
    exact = 4.0 * math.pi * math.log(1.5)
    previous = math.inf
    for h in (0.1, 0.01, 0.001):
        # Constant 1 on a fine mesh of [1, 2 - h], then a ramp down to 0 at u = 2
        knots = list(np.linspace(1.0, 2.0 - h, 200)) + [2.0]
        values = [1.0] * 200 + [0.0]
        deficit = exact - shc_transform(RadialKernel.sampled(knots, values), 0.0, 2.0)
        assert 0.0 < deficit <= 2.2 * h
        assert deficit < previous
        previous = deficit
    assert previous == pytest.approx(0.0, abs=3e-3)


def test_sampled_kernel_evaluation() -> None:
    kernel = RadialKernel.sampled([1.0, 2.0, 4.0], [2.0, 1.0, 0.0])
    assert kernel.kind is KernelKind.SAMPLED
    assert kernel(1.5) == pytest.approx(1.5)
    assert kernel(3.0) == pytest.approx(0.5)
    assert kernel(0.5) == 0.0
    assert kernel(5.0) == 0.0
    assert kernel.support_upper == 4.0


def test_kernel_validation() -> None:
    with pytest.raises(DomainError):
        RadialKernel.indicator(1.0)
    with pytest.raises(DomainError):
        RadialKernel.sampled([1.0], [0.0])
    with pytest.raises(DomainError):
        RadialKernel.sampled([1.5, 2.0], [1.0, 0.0])
    with pytest.raises(DomainError):
        RadialKernel.sampled([1.0, 3.0, 2.0], [1.0, 1.0, 0.0])
    with pytest.raises(DomainError):
        RadialKernel.sampled([1.0, 2.0], [1.0, 0.5])


def test_transform_tolerances_are_validated() -> None:
    with pytest.raises(DomainError):
        shc_transform(RadialKernel.indicator(2.0), 0.0, 2.0, quad_tol=0.0)
    with pytest.raises(DomainError):
        shc_weight2_indicator(0.5)
