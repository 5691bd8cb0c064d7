import math

import numpy as np
import pytest

from green_bounds.core.hyperbolic import (
    Moebius,
    UhpPoint,
    disc_area,
    free_green_L,
    hyperbolic_distance,
    mobius_apply,
    point_pair_invariant,
    q_parameter,
)
from green_bounds.core.quadrature import integrate_adaptive_simpson
from green_bounds.errors import DomainError


def _random_sl2r(rng: np.random.Generator) -> Moebius:
    a, b, c = rng.uniform(-2.0, 2.0, size=3)
    a = a if abs(a) > 0.2 else 1.0
    return Moebius(a, b, c, (1.0 + b * c) / a)


def test_identity_and_inversion() -> None:
    i = UhpPoint(0.0, 1.0)
    assert mobius_apply(Moebius.identity(), i) == i
    image = mobius_apply(Moebius(0, -1, 1, 0), UhpPoint(0.0, 2.0))
    assert image.x == pytest.approx(0.0, abs=1e-15)
    assert image.y == pytest.approx(0.5)


def test_translation_shifts_real_part() -> None:
    z = UhpPoint(0.25, 3.0)
    w = Moebius.translation(2).apply(z)
    assert (w.x, w.y) == (2.25, 3.0)


def test_image_height_formula() -> None:
    rng = np.random.default_rng(1)
    for _ in range(50):
        m = _random_sl2r(rng)
        z = UhpPoint(rng.uniform(-3, 3), rng.uniform(0.1, 5))
        w = mobius_apply(m, z)
        assert w.y > 0
        assert w.y == pytest.approx(z.y / abs(m.c * z.as_complex() + m.d) ** 2, rel=1e-12)


def test_point_pair_invariant_is_moebius_invariant() -> None:
    rng = np.random.default_rng(2)
    for _ in range(100):
        m = _random_sl2r(rng)
        z = UhpPoint(rng.uniform(-2, 2), rng.uniform(0.2, 4))
        w = UhpPoint(rng.uniform(-2, 2), rng.uniform(0.2, 4))
        before = point_pair_invariant(z, w)
        after = point_pair_invariant(mobius_apply(m, z), mobius_apply(m, w))
        assert after == pytest.approx(before, rel=1e-9)


def test_point_pair_invariant_basic_properties() -> None:
    z, w = UhpPoint(0.3, 1.7), UhpPoint(-1.2, 0.4)
    assert point_pair_invariant(z, z) == 1.0
    assert point_pair_invariant(z, w) == point_pair_invariant(w, z)
    assert point_pair_invariant(UhpPoint(0.0, 1.0), UhpPoint(0.0, 2.0)) == pytest.approx(1.25)
    assert hyperbolic_distance(UhpPoint(0.0, 1.0), UhpPoint(0.0, math.e)) == pytest.approx(1.0)


def test_point_pair_invariant_is_cosh_of_distance() -> None:
    rng = np.random.default_rng(3)
    for _ in range(200):
        z = UhpPoint(rng.uniform(-2, 2), rng.uniform(0.2, 4))
        w = UhpPoint(rng.uniform(-2, 2), rng.uniform(0.2, 4))
        zc, wc = z.as_complex(), w.as_complex()
        d = 2.0 * math.atanh(abs(zc - wc) / abs(zc - wc.conjugate()))
        assert point_pair_invariant(z, w) == pytest.approx(math.cosh(d), rel=1e-12)
        assert hyperbolic_distance(z, w) == pytest.approx(d, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("a", [1.1, 1.44, 2.0, 5.0])
def test_doubling_identity(a: float) -> None:
    # Along a geodesic distances add, so u at twice the distance is 2a^2 - 1
    d = math.acosh(a)
    z, w, v = UhpPoint(0.0, 1.0), UhpPoint(0.0, math.exp(d)), UhpPoint(0.0, math.exp(2.0 * d))
    assert point_pair_invariant(z, w) == pytest.approx(a, rel=1e-12)
    assert point_pair_invariant(z, v) == pytest.approx(2.0 * a * a - 1.0, rel=1e-12)


def test_common_center_bounds_pair_invariant() -> None:
    # Two points within u <= a of a common center are within 2a^2 - 1 of each other
    rng = np.random.default_rng(4)
    for _ in range(200):
        center = UhpPoint(rng.uniform(-1, 1), rng.uniform(0.5, 2))
        p = UhpPoint(rng.uniform(-1, 1), rng.uniform(0.5, 2))
        q = UhpPoint(rng.uniform(-1, 1), rng.uniform(0.5, 2))
        reach = max(point_pair_invariant(p, center), point_pair_invariant(q, center))
        assert point_pair_invariant(p, q) <= (2.0 * reach * reach - 1.0) * (1.0 + 1e-12)


def test_free_green_kernel() -> None:
    assert free_green_L(3.0) == pytest.approx(math.log(2.0) / (4.0 * math.pi))
    assert free_green_L(1.0 + 1e-8) > free_green_L(2.0) > free_green_L(100.0) > 0
    with pytest.raises(DomainError):
        free_green_L(1.0)


def test_determinant_is_checked() -> None:
    with pytest.raises(DomainError):
        Moebius(1, 1, 1, 1)
    with pytest.raises(DomainError):
        Moebius(2.0, 0.0, 0.0, 0.6)
    assert Moebius.normalized(2.0, 0.0, 0.0, 2.0).entries == (1.0, 0.0, 0.0, 1.0)


def test_upper_half_plane_validation() -> None:
    with pytest.raises(DomainError):
        UhpPoint(0.0, 0.0)
    with pytest.raises(DomainError):
        UhpPoint(float("nan"), 1.0)


@pytest.mark.parametrize("a", [1.1, 1.44, 2.0, 5.0])
def test_disc_area_by_quadrature(a: float) -> None:
    # In x = r sin(t) the disc {u(i, w) <= a} has area int 2 r^2 cos^2 t / (1 + r^2 sin^2 t) dt
    r2 = a * a - 1.0
    value, _ = integrate_adaptive_simpson(
        lambda t: 2.0 * r2 * math.cos(t) ** 2 / (1.0 + r2 * math.sin(t) ** 2),
        -math.pi / 2.0,
        math.pi / 2.0,
        tol=1e-11,
    )
    assert value == pytest.approx(disc_area(a), rel=1e-8)


def test_quadrature_refines_with_tolerance() -> None:
    exact = math.e - 1.0
    previous = math.inf
    for tol in (1e-4, 1e-6, 1e-8, 1e-10, 1e-12):
        value, estimate = integrate_adaptive_simpson(math.exp, 0.0, 1.0, tol=tol)
        error = abs(value - exact)
        assert estimate <= tol
        assert error <= max(tol, 1e-14)
        assert error <= previous + 1e-15
        previous = error


def test_disc_area_monte_carlo() -> None:
    # dx dy / y^2 is Lebesgue measure in (x, 1/y)
    a = 2.0
    r = math.sqrt(a * a - 1.0)
    rng = np.random.default_rng(7)
    n = 400_000
    x = rng.uniform(-r, r, n)
    t = rng.uniform(1.0 / (a + r), 1.0 / (a - r), n)
    y = 1.0 / t
    inside = 1.0 + (x * x + (y - 1.0) ** 2) / (2.0 * y) <= a
    box = 2.0 * r * (1.0 / (a - r) - 1.0 / (a + r))
    assert box * inside.mean() == pytest.approx(disc_area(a), rel=0.01)


def test_q_parameter_modulus() -> None:
    tau = complex(0.3, 1.25)
    assert abs(q_parameter(tau)) == pytest.approx(math.exp(-2.0 * math.pi * 1.25), rel=1e-12)
