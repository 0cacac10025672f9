"""Test Gaussian states, the Williamson decomposition and Gaussian searches."""

import math

import numpy as np
import pytest

from bosoncast.entropy_core import g_bits
from bosoncast.errors import DomainError, InvalidStateError
from bosoncast.gaussian_states import (
    GaussianSearchConfig,
    GaussianState,
    apply_symplectic,
    beam_splitter,
    lagrange_multipliers,
    lagrange_residual,
    make_coherent,
    make_squeezed_thermal,
    make_squeezed_vacuum,
    make_thermal,
    make_vacuum,
    min_output_entropy_gaussian,
    min_wehrl_output_entropy,
    q_matrix,
    random_state,
    random_symplectic,
    symplectic_eigenvalues,
    tensor,
    von_neumann_entropy,
    wehrl_entropy_gaussian,
    wehrl_entropy_gaussian_thermal,
    williamson,
)


def test_vacuum_and_thermal_correlation_matrices():
    """Vacuum is diag(1, 0); thermal(K) is diag(K + 1, K)."""
    np.testing.assert_allclose(make_vacuum(1).corr, np.diag([1.0, 0.0]))
    np.testing.assert_allclose(make_thermal(2, [1.0, 3.0]).corr, np.diag([2.0, 4.0, 1.0, 3.0]))
    np.testing.assert_allclose(make_vacuum(1).quadrature_covariance(), 0.25 * np.eye(2))


def test_invalid_states_rejected():
    """Non-Hermitian or mis-structured matrices raise InvalidStateError."""
    with pytest.raises(InvalidStateError):
        GaussianState(1, [0], [[1.0, 0.5], [0.0, 0.0]])
    with pytest.raises(InvalidStateError):
        GaussianState(1, [0], np.diag([1.0, 1.0]))
    with pytest.raises(InvalidStateError):
        GaussianState(1, [0, 0], np.diag([1.0, 0.0]))
    with pytest.raises(DomainError):
        make_thermal(1, -0.5)


def test_state_arrays_are_read_only():
    """States are immutable and do not alias caller arrays."""
    corr = np.diag([2.0, 1.0]).astype(complex)
    state = GaussianState(1, [0], corr)
    corr[0, 0] = 5.0
    assert state.corr[0, 0] == 2.0
    with pytest.raises(ValueError):
        state.corr[0, 0] = 3.0


def test_squeezed_vacuum_moments():
    """<a^dagger a> = sinh^2 r and |<a a>| = sinh r cosh r."""
    r = 0.7
    state = make_squeezed_vacuum(r)
    assert state.photon_numbers()[0] == pytest.approx(math.sinh(r) ** 2)
    assert abs(state.pairing_matrix[0, 0]) == pytest.approx(math.sinh(r) * math.cosh(r))
    assert symplectic_eigenvalues(state)[0] == pytest.approx(0.0, abs=1e-9)
    assert von_neumann_entropy(state).value == pytest.approx(0.0, abs=1e-9)


def test_thermal_williamson_is_trivial():
    """thermal(2) decomposes with lambda = 2 and S a phase."""
    decomposition = williamson(make_thermal(1, 2.0))
    np.testing.assert_allclose(decomposition.lambdas, [2.0], atol=1e-12)
    np.testing.assert_allclose(np.abs(decomposition.s), np.eye(2), atol=1e-12)


def test_symplectic_eigenvalues_sorted():
    """Symplectic eigenvalues of a thermal product come back descending."""
    state = tensor([make_thermal(1, 0.5), make_thermal(1, 4.0), make_thermal(1, 1.0)])
    np.testing.assert_allclose(symplectic_eigenvalues(state), [4.0, 1.0, 0.5], atol=1e-10)


@pytest.mark.slow
def test_williamson_random_suite(rng):
    """Reconstruction and symplectic residuals stay below 1e-10 on random states."""
    for trial in range(100):
        n = 1 + trial % 4
        state = random_state(n, rng)
        decomposition = williamson(state)
        assert decomposition.reconstruction_residual(state) < 1e-10
        assert decomposition.symplectic_residual() < 1e-10
        assert np.all(decomposition.lambdas >= 0)
        assert np.all(np.diff(decomposition.lambdas) <= 1e-12)


@pytest.mark.slow
def test_entropy_invariant_under_symplectic_maps(rng):
    """Random symplectic conjugations leave the entropy unchanged."""
    state = random_state(3, rng)
    reference = von_neumann_entropy(state).value
    for _ in range(100):
        s = random_symplectic(3, rng, max_squeeze=0.5)
        q = q_matrix(3)
        assert np.linalg.norm(s.conj().T @ q @ s - q) < 1e-10
        assert von_neumann_entropy(apply_symplectic(s, state)).value == pytest.approx(
            reference, abs=1e-9
        )


def test_beam_splitter_vacuum_thermal():
    """Vacuum on a, thermal on b: the outputs are thermal with (1-eta)K and eta K."""
    _, out_c, out_d = beam_splitter(make_vacuum(1), make_thermal(1, 1.0), 0.8)
    assert out_c.photon_numbers()[0] == pytest.approx(0.2)
    assert out_d.photon_numbers()[0] == pytest.approx(0.8)
    assert von_neumann_entropy(out_c).value == pytest.approx(g_bits(0.2), abs=1e-12)


def test_beam_splitter_equal_thermals_stay_thermal():
    """Two equal thermal inputs leave both outputs thermal and uncorrelated."""
    joint, out_c, out_d = beam_splitter(make_thermal(2, 1.5), make_thermal(2, 1.5), 0.3)
    np.testing.assert_allclose(joint.corr, make_thermal(4, 1.5).corr, atol=1e-12)
    np.testing.assert_allclose(out_c.corr, make_thermal(2, 1.5).corr, atol=1e-12)
    np.testing.assert_allclose(out_d.corr, make_thermal(2, 1.5).corr, atol=1e-12)


def test_beam_splitter_moves_displacement():
    """A coherent amplitude splits as sqrt(eta) and sqrt(1-eta), with a sign on d."""
    _, out_c, out_d = beam_splitter(make_coherent(1.0 + 0.5j), make_vacuum(1), 0.64)
    assert out_c.mean[0] == pytest.approx(0.8 * (1.0 + 0.5j))
    assert out_d.mean[0] == pytest.approx(0.6 * (1.0 + 0.5j))
    _, out_c, out_d = beam_splitter(make_vacuum(1), make_coherent(1.0), 0.64)
    assert out_c.mean[0] == pytest.approx(0.6)
    assert out_d.mean[0] == pytest.approx(-0.8)


def test_beam_splitter_mode_mismatch():
    """Inputs with different mode counts are rejected."""
    with pytest.raises(DomainError):
        beam_splitter(make_vacuum(1), make_vacuum(2), 0.5)


def test_reduced_and_json_round_trip():
    """Reduction picks modes; the JSON form reproduces the state."""
    state = tensor([make_thermal(1, 1.0), make_squeezed_thermal(0.5, 0.3, 1.0)])
    second = state.reduced([1])
    assert symplectic_eigenvalues(second)[0] == pytest.approx(0.5)
    restored = GaussianState.from_dict(state.to_dict())
    np.testing.assert_array_equal(restored.corr, state.corr)
    with pytest.raises(InvalidStateError):
        GaussianState.from_dict({"n_modes": 1, "mean": [[0, 0]], "corr": [[1, 0]]})


def test_lagrange_condition():
    """Equal symplectic eigenvalues satisfy the stationarity condition."""
    assert lagrange_residual([1.0, 1.0, 1.0], 0.7) == pytest.approx(0.0, abs=1e-15)
    assert lagrange_residual([0.5, 2.0], 0.7) > 1e-3
    xi = lagrange_multipliers([1.0], 0.7)
    assert xi[0] == pytest.approx(0.3 * math.log(1 + 1 / 0.3) / math.log(2.0))


def test_wehrl_closed_forms():
    """Vacuum has Wehrl entropy 1 nat, thermal(K) 1 + ln(K+1)."""
    assert wehrl_entropy_gaussian(make_vacuum(1)).value == pytest.approx(1.0)
    assert wehrl_entropy_gaussian(make_thermal(1, 1.0)).value == pytest.approx(1 + math.log(2))
    assert wehrl_entropy_gaussian_thermal(2, 1.0).value == pytest.approx(2 * (1 + math.log(2)))
    assert min_wehrl_output_entropy(1, 1.0, 0.5).value == pytest.approx(1 + math.log(1.5))
    assert wehrl_entropy_gaussian(make_squeezed_vacuum(0.5)).value > 1.0


def test_gaussian_search_thermal_is_best():
    """No Gaussian candidate beats the thermal product."""
    config = GaussianSearchConfig(budget=60, seed=4)
    report = min_output_entropy_gaussian(0.7, 1.0, 2, config)
    assert report.gap >= -1e-9
    assert abs(report.thermal_gap) < 1e-9
    assert report.target_entropy.value == pytest.approx(2 * g_bits(0.3))
    assert report.candidates_evaluated + report.candidates_skipped == 61
    assert report.n_modes == 2


def test_gaussian_search_is_reproducible():
    """Identical seeds give identical reports, independent of threads."""
    first = min_output_entropy_gaussian(0.6, 0.5, 1, GaussianSearchConfig(budget=30, seed=1))
    second = min_output_entropy_gaussian(
        0.6, 0.5, 1, GaussianSearchConfig(budget=30, seed=1, threads=3)
    )
    assert first.to_dict() == second.to_dict()


def test_gaussian_search_zero_k():
    """K = 0 pins the input to the vacuum."""
    report = min_output_entropy_gaussian(0.5, 0.0, 1)
    assert report.best_entropy.value == 0.0
    assert report.gap == 0.0


def test_gaussian_search_validation():
    """Unknown families and bad parameters are rejected."""
    with pytest.raises(DomainError):
        GaussianSearchConfig(families=("nope",))
    with pytest.raises(DomainError):
        min_output_entropy_gaussian(1.0, 1.0, 1)
