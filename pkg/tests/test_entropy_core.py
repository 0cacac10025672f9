"""Test the thermal entropy function and its inverse."""

import math

import numpy as np
import pytest

from bosoncast.entropy_core import (
    Base,
    EntropyValue,
    g,
    g_array,
    g_bits,
    g_inv,
    g_prime,
    g_scaling_inequality_check,
)
from bosoncast.errors import DomainError


def _g_direct(x):
    return (x + 1) * math.log2(x + 1) - x * math.log2(x)


def test_g_known_values():
    """g(0) = 0 and g(1) = 2 bits."""
    assert g(0).value == 0.0
    assert g(1).value == pytest.approx(2.0, abs=1e-14)
    assert g(1, Base.NATS).value == pytest.approx(2 * math.log(2), abs=1e-14)
    assert g_bits(12) == pytest.approx(_g_direct(12), abs=1e-12)
    assert g_bits(12) == pytest.approx(5.0862, abs=1e-4)


def test_g_large_argument_is_stable():
    """The log1p form keeps precision where the naive difference cancels."""
    assert g_bits(1e12) == pytest.approx(math.log2(1e12) + 1 / math.log(2), rel=1e-12)


def test_g_below_threshold_is_zero():
    """Photon numbers under 1e-300 give exactly zero."""
    assert g(1e-301).value == 0.0
    assert g(1e-200).value > 0.0


@pytest.mark.parametrize("x", [-1.0, float("inf"), float("nan")])
def test_g_rejects_invalid(x):
    """Negative and non-finite photon numbers are domain errors."""
    with pytest.raises(DomainError):
        g(x)


def test_g_array_matches_scalar():
    """Vectorised g agrees with the scalar version."""
    xs = np.array([0.0, 1e-301, 0.2, 1.0, 12.0, 1e6])
    expected = [g_bits(x) for x in xs]
    np.testing.assert_allclose(g_array(xs), expected, rtol=1e-14, atol=0)
    with pytest.raises(DomainError):
        g_array([1.0, -0.5])


def test_g_prime_matches_finite_difference():
    """g' agrees with a central difference."""
    for x in (0.1, 1.0, 7.5):
        h = 1e-6 * x
        numeric = (g_bits(x + h) - g_bits(x - h)) / (2 * h)
        assert g_prime(x) == pytest.approx(numeric, rel=1e-7)
    with pytest.raises(DomainError):
        g_prime(0.0)


@pytest.mark.parametrize("y", [1e-10, 1e-3, 0.78, 2.0, 5.0862, 30.0, 200.0])
def test_g_inv_round_trip(y):
    """g(g_inv(y)) reproduces y to 1e-12 bits."""
    assert g_bits(g_inv(y)) == pytest.approx(y, abs=1e-12)


def test_g_inv_edges():
    """Zero inverts to zero and nats are accepted."""
    assert g_inv(0.0) == 0.0
    assert g_inv(2 * math.log(2), Base.NATS) == pytest.approx(1.0, rel=1e-12)
    assert g_inv(EntropyValue(2.0)) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(DomainError):
        g_inv(-0.1)


def test_entropy_value_conversion():
    """Bits and nats convert into each other."""
    value = EntropyValue(1.0)
    assert value.nats == pytest.approx(math.log(2))
    assert value.to("nats").value == pytest.approx(math.log(2))
    assert value.to(Base.NATS).to(Base.BITS).value == pytest.approx(1.0)
    assert float(value) == 1.0
    assert EntropyValue.from_nats(-1e-17).value == 0.0
    with pytest.raises(DomainError):
        EntropyValue(-1.0)


def test_scaling_single_point_is_equality():
    """With one photon number both sides coincide."""
    report = g_scaling_inequality_check([3.0], 0.4)
    assert report.x0 == pytest.approx(3.0, rel=1e-12)
    assert report.lhs == pytest.approx(report.rhs, abs=1e-12)
    assert report.holds


def test_scaling_strict_for_spread_inputs():
    """Unequal photon numbers give a strictly positive margin."""
    report = g_scaling_inequality_check([0.0, 10.0], 0.5)
    assert report.holds
    assert report.lhs > report.rhs


def test_scaling_rejects_bad_input():
    """Empty lists and eta outside [0, 1] are domain errors."""
    with pytest.raises(DomainError):
        g_scaling_inequality_check([], 0.5)
    with pytest.raises(DomainError):
        g_scaling_inequality_check([1.0], 1.5)


@pytest.mark.slow
def test_scaling_random_suite(rng):
    """Ten thousand random instances, no violation beyond 1e-12."""
    violations = 0
    for _ in range(10_000):
        size = int(rng.integers(1, 8))
        xs = rng.exponential(5.0, size)
        report = g_scaling_inequality_check(xs, rng.uniform(0.0, 1.0))
        violations += report.lhs < report.rhs - 1e-12
    assert violations == 0


def test_g_increasing_and_concave_on_random_pairs(rng):
    """g rises strictly and lies above its chords."""
    for _ in range(200):
        x = 10.0 ** rng.uniform(-4.0, 3.0)
        y = x * (1.0 + rng.uniform(0.01, 10.0))
        assert g_bits(y) > g_bits(x)
        assert g_bits(0.5 * (x + y)) > 0.5 * (g_bits(x) + g_bits(y))


def test_g_inv_recovers_random_photon_numbers(rng):
    """g_inv(g(x)) returns x to relative 1e-10 across twelve decades."""
    for x in 10.0 ** rng.uniform(-6.0, 6.0, size=200):
        assert g_inv(g_bits(x)) == pytest.approx(x, rel=1e-10)
