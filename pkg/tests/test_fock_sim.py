"""Test the truncated Fock-space channel simulation."""

import math

import numpy as np
import pytest

from bosoncast import fock_sim
from bosoncast.capacity_regions import ChannelParams, degraded_transmissivity
from bosoncast.entropy_core import g_bits
from bosoncast.errors import (
    DomainError,
    GridError,
    InvalidStateError,
    TruncationError,
    UnsupportedRegimeError,
)
from bosoncast.fock_sim import (
    FockDensityMatrix,
    HusimiGrid,
    QuadratureConfig,
    attenuate,
    beam_splitter_unitary,
    coherent_ensemble,
    coherent_region_quadrature,
    conjecture1_local_check,
    conjecture2_search,
    displace,
    gaussian_coherent_mixture,
    holevo_chi,
    make_fock_coherent,
    make_fock_diagonal,
    make_fock_number,
    make_fock_squeezed,
    make_fock_thermal,
    mean_photon_number,
    propagate,
    purity,
    trace_distance,
    two_point_state,
    von_neumann_entropy_fock,
    wehrl_entropy_numeric,
    wehrl_scaling_check,
)
from bosoncast.gaussian_states import (
    beam_splitter,
    make_coherent,
    make_squeezed_vacuum,
    make_thermal,
    von_neumann_entropy,
)


def test_thermal_state_and_tail():
    """Thermal weights are geometric and the lost tail is recorded."""
    rho = make_fock_thermal(1.0, dim=40)
    assert np.real(np.trace(rho.matrix)) == pytest.approx(1.0, abs=1e-12)
    assert rho.tail_mass == pytest.approx(2.0**-40, abs=1e-14)
    assert mean_photon_number(rho) == pytest.approx(1.0, abs=1e-9)
    assert von_neumann_entropy_fock(rho).value == pytest.approx(g_bits(1.0), abs=1e-9)


def test_truncation_budget_enforced():
    """A thermal state squeezed into too small a space is refused."""
    with pytest.raises(TruncationError, match="dim"):
        make_fock_thermal(5.0, dim=10)
    assert fock_sim.thermal_dim(5.0) > 10


def test_coherent_state_is_pure():
    """Coherent states have unit purity and mean photon number |alpha|^2."""
    rho = make_fock_coherent(1.5 - 0.5j)
    assert purity(rho) == pytest.approx(1.0, abs=1e-12)
    assert mean_photon_number(rho) == pytest.approx(2.5, abs=1e-9)
    assert von_neumann_entropy_fock(rho).value == pytest.approx(0.0, abs=1e-9)


def test_invalid_density_matrices():
    """Bad shapes, traces and Hermiticity are rejected."""
    with pytest.raises(InvalidStateError):
        FockDensityMatrix(np.eye(3) / 3, dim=4)
    with pytest.raises(InvalidStateError):
        FockDensityMatrix(np.eye(3), dim=3)
    with pytest.raises(InvalidStateError):
        FockDensityMatrix(np.array([[0.5, 0.1], [0.0, 0.5]]), dim=2)
    with pytest.raises(DomainError):
        make_fock_number(5, dim=5)


def test_negative_eigenvalue_rejected_by_entropy():
    """Eigenvalues below -1e-9 are an error, not silently clipped."""
    rho = FockDensityMatrix(np.diag([1.1, -0.1]), dim=2)
    with pytest.raises(InvalidStateError):
        von_neumann_entropy_fock(rho)


def test_beam_splitter_unitary():
    """The block-built unitary is unitary and routes one photon as sqrt(eta), -sqrt(1-eta)."""
    dim, eta = 6, 0.7
    u = beam_splitter_unitary(eta, dim)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(dim * dim), atol=1e-12)
    column = u[:, 1 * dim + 0]
    assert column[1 * dim + 0] == pytest.approx(math.sqrt(eta))
    assert column[0 * dim + 1] == pytest.approx(-math.sqrt(1 - eta))
    np.testing.assert_allclose(beam_splitter_unitary(1.0, dim), np.eye(dim * dim), atol=1e-14)


def test_beam_splitter_unitary_conserves_photons():
    """The unitary commutes with the total photon number."""
    dim = 5
    n = np.arange(dim)
    total = np.diag((n[:, None] + n[None, :]).reshape(-1)).astype(float)
    u = beam_splitter_unitary(0.35, dim)
    np.testing.assert_allclose(u @ total, total @ u, atol=1e-12)


def test_propagate_vacuum_thermal_entropy():
    """vacuum (x) thermal(1), eta = 0.8: the c arm carries g(0.2) bits."""
    dim = 60
    rho_c, rho_d = propagate(make_fock_number(0, dim), make_fock_thermal(1.0, dim), 0.8)
    assert von_neumann_entropy_fock(rho_c).value == pytest.approx(g_bits(0.2), abs=1e-6)
    assert von_neumann_entropy_fock(rho_d).value == pytest.approx(g_bits(0.8), abs=1e-6)


def test_propagate_equal_thermals():
    """thermal (x) thermal with equal K at eta = 0.5 gives thermal outputs."""
    dim = 60
    thermal = make_fock_thermal(1.0, dim)
    rho_c, rho_d = propagate(thermal, thermal, 0.5)
    assert trace_distance(rho_c, thermal) < 1e-8
    assert trace_distance(rho_d, thermal) < 1e-8
    assert mean_photon_number(rho_c) == pytest.approx(1.0, abs=1e-8)


def test_general_path_matches_loss_channel():
    """The block-by-block path agrees with the Kraus path when port a is empty."""
    dim = 20
    rho_b = make_fock_coherent(0.8 + 0.3j, dim)
    fast_c, fast_d = propagate(make_fock_number(0, dim), rho_b, 0.6)
    slow_c, slow_d = fock_sim._propagate_exact(make_fock_number(0, dim), rho_b, 0.6)
    assert trace_distance(fast_c, slow_c) < 1e-10
    assert trace_distance(fast_d, slow_d) < 1e-10


def test_propagate_conserves_photon_number():
    """<n_c> + <n_d> = <n_a> + <n_b>."""
    dim = 30
    rho_a = make_fock_coherent(0.7, dim)
    rho_b = make_fock_thermal(0.5, dim)
    rho_c, rho_d = propagate(rho_a, rho_b, 0.35)
    total_in = mean_photon_number(rho_a) + mean_photon_number(rho_b)
    total_out = mean_photon_number(rho_c) + mean_photon_number(rho_d)
    assert total_out == pytest.approx(total_in, abs=1e-9)


def test_propagate_validation():
    """Mismatched dims and eta outside [0, 1] are rejected."""
    with pytest.raises(DomainError):
        propagate(make_fock_number(0, 5), make_fock_number(0, 6), 0.5)
    with pytest.raises(DomainError):
        propagate(make_fock_number(0, 5), make_fock_number(0, 5), 1.5)


@pytest.mark.parametrize("k", [1.0, 3.0, 5.0])
def test_propagate_tail_at_thermal_dim(k):
    """At the builder's own dim both arms keep their tail inside the budget."""
    dim = fock_sim.thermal_dim(k)
    thermal = make_fock_thermal(k, dim)
    rho_c, rho_d = propagate(thermal, thermal, 0.5)
    for arm in (rho_c, rho_d):
        assert arm.tail_mass <= 1e-8
        assert von_neumann_entropy_fock(arm).value == pytest.approx(g_bits(k), abs=1e-6)
        assert trace_distance(arm, thermal) < 1e-7


@pytest.mark.slow
def test_propagate_tail_at_thermal_dim_hot():
    """K = 8 runs at its thermal dim without building the joint matrix."""
    dim = fock_sim.thermal_dim(8.0)
    thermal = make_fock_thermal(8.0, dim)
    rho_c, rho_d = propagate(thermal, thermal, 0.5)
    assert rho_c.tail_mass <= 1e-8
    assert rho_d.tail_mass <= 1e-8
    assert von_neumann_entropy_fock(rho_c).value == pytest.approx(g_bits(8.0), abs=1e-6)


def test_propagate_mixed_inputs_at_thermal_dim():
    """A coherent state against a hot thermal state stays inside the budget."""
    dim = fock_sim.thermal_dim(5.0)
    rho_c, rho_d = propagate(make_fock_coherent(1.0, dim), make_fock_thermal(5.0, dim), 0.5)
    assert rho_c.tail_mass <= 1e-8
    assert rho_d.tail_mass <= 1e-8
    total = mean_photon_number(rho_c) + mean_photon_number(rho_d)
    assert total == pytest.approx(6.0, abs=1e-5)


def test_propagate_refuses_lossy_truncation():
    """Outputs that spill past dim raise with a dim hint unless the budget is lifted."""
    hot = make_fock_thermal(5.0, 40, tail_budget=None)
    with pytest.raises(TruncationError, match="dim"):
        propagate(hot, hot, 0.5)
    rho_c, _ = propagate(hot, hot, 0.5, tail_budget=None)
    assert rho_c.tail_mass > 1e-8


def test_diagonal_and_general_paths_agree():
    """Number-diagonal inputs give the same outputs on both evaluation paths."""
    dim, eta = 12, 0.3
    rho_a = make_fock_thermal(0.5, dim, tail_budget=None)
    rho_b = make_fock_thermal(1.0, dim, tail_budget=None)
    blocks = fock_sim._number_blocks(eta, dim)
    diag_c, diag_d = fock_sim._diagonal_outputs(
        np.real(np.diag(rho_a.matrix)), np.real(np.diag(rho_b.matrix)), blocks
    )
    full_c, full_d = fock_sim._mixed_outputs(rho_a, rho_b, blocks)
    np.testing.assert_allclose(full_c, diag_c, atol=1e-12)
    np.testing.assert_allclose(full_d, diag_d, atol=1e-12)


@pytest.mark.parametrize(
    ("fock_pair", "gaussian_pair", "eta", "dim"),
    [
        (
            lambda d: (make_fock_coherent(0.6 + 0.2j, d), make_fock_thermal(1.0, d)),
            lambda: (make_coherent(0.6 + 0.2j), make_thermal(1, 1.0)),
            0.7,
            40,
        ),
        (
            lambda d: (make_fock_squeezed(0.3, 0.0, d), make_fock_thermal(0.5, d)),
            lambda: (make_squeezed_vacuum(0.3), make_thermal(1, 0.5)),
            0.6,
            40,
        ),
        (
            lambda d: (make_fock_thermal(0.5, d), make_fock_thermal(2.0, d)),
            lambda: (make_thermal(1, 0.5), make_thermal(1, 2.0)),
            0.8,
            60,
        ),
    ],
)
def test_fock_outputs_match_gaussian_moments(fock_pair, gaussian_pair, eta, dim):
    """Fock and covariance-matrix beam splitters give the same output entropies."""
    rho_c, rho_d = propagate(*fock_pair(dim), eta)
    _, gauss_c, gauss_d = beam_splitter(*gaussian_pair(), eta)
    assert von_neumann_entropy_fock(rho_c).value == pytest.approx(
        von_neumann_entropy(gauss_c).value, abs=1e-6
    )
    assert von_neumann_entropy_fock(rho_d).value == pytest.approx(
        von_neumann_entropy(gauss_d).value, abs=1e-6
    )


@pytest.mark.parametrize(
    "inputs",
    [
        lambda d: (make_fock_thermal(1.0, d), make_fock_thermal(1.0, d)),
        lambda d: (make_fock_coherent(0.5, d), make_fock_thermal(1.0, d)),
    ],
)
def test_output_entropy_converges_in_dim(inputs):
    """Doubling the truncation moves the output entropy by less than 1e-7."""
    small = propagate(*inputs(40), 0.3)
    large = propagate(*inputs(80), 0.3)
    for arm_small, arm_large in zip(small, large, strict=True):
        assert arm_small.tail_mass < 1e-8
        assert von_neumann_entropy_fock(arm_small).value == pytest.approx(
            von_neumann_entropy_fock(arm_large).value, abs=1e-7
        )


def test_joint_entropy_invariant_under_beam_splitter():
    """The two-mode unitary leaves the joint entropy unchanged."""
    dim = 6
    rho_a = make_fock_diagonal([0.6, 0.3, 0.1], dim)
    rho_b = make_fock_coherent(0.2, dim, tail_budget=None)
    joint_in = FockDensityMatrix(np.kron(rho_a.matrix, rho_b.matrix), dim, n_modes=2)
    u = beam_splitter_unitary(0.45, dim)
    joint_out = FockDensityMatrix(u @ joint_in.matrix @ u.conj().T, dim, n_modes=2)
    assert von_neumann_entropy_fock(joint_out).value == pytest.approx(
        von_neumann_entropy_fock(joint_in).value, abs=1e-9
    )


def test_holevo_chi_of_orthogonal_and_identical_members():
    """Two orthogonal equiprobable states carry one bit; identical states carry none."""
    zero, one = make_fock_number(0, 4), make_fock_number(1, 4)
    assert holevo_chi([(0.5, zero), (0.5, one)]).value == pytest.approx(1.0, abs=1e-12)
    thermal = make_fock_thermal(0.3, 4, tail_budget=None)
    assert holevo_chi([(0.25, thermal), (0.75, thermal)]).value == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("dim", [2, 5, 16])
def test_maximally_mixed_entropy(dim):
    """The maximally mixed state on dim levels has log2(dim) bits."""
    rho = FockDensityMatrix(np.eye(dim) / dim, dim)
    assert von_neumann_entropy_fock(rho).value == pytest.approx(math.log2(dim), abs=1e-12)


@pytest.mark.parametrize("eta", [0.2, 0.5, 0.8])
def test_two_point_output_exceeds_thermal_bound(eta):
    """A non-Gaussian input at the entropy constraint leaves more than g((1-eta)K)."""
    rho_c, _ = propagate(make_fock_number(0, 10), two_point_state(0.2, 3, 10), eta)
    assert von_neumann_entropy_fock(rho_c).value > g_bits((1 - eta) * 0.2)


def test_degraded_channel_composition():
    """Attenuating Bob's output by (1 - eta) / eta reproduces Charlie's."""
    eta = 0.8
    rho_in = make_fock_thermal(2.0, 80)
    bob = attenuate(rho_in, eta)
    charlie = attenuate(rho_in, 1 - eta)
    assert trace_distance(attenuate(bob, degraded_transmissivity(eta)), charlie) < 1e-10


def test_holevo_chi_of_coherent_ensemble():
    """A Gaussian coherent ensemble of mean photon number 1 carries g(1) = 2 bits."""
    ensemble = coherent_ensemble(1.0, nodes=20, dim=40)
    assert holevo_chi(ensemble).value == pytest.approx(2.0, abs=1e-3)


def test_holevo_chi_validation():
    """Probabilities must sum to one and dimensions agree."""
    rho = make_fock_number(0, 4)
    with pytest.raises(DomainError):
        holevo_chi([(0.5, rho), (0.4, rho)])
    with pytest.raises(DomainError):
        holevo_chi([(0.5, rho), (0.5, make_fock_number(0, 5))])
    assert holevo_chi([(1.0, rho)]).value == 0.0


def test_gaussian_mixture_is_displaced_thermal():
    """A Gaussian cloud of coherent states is a displaced thermal state."""
    dim = 40
    mixture = gaussian_coherent_mixture(0.0, 1.0, dim)
    assert trace_distance(mixture, make_fock_thermal(1.0, dim)) < 1e-10
    shifted = gaussian_coherent_mixture(0.5, 0.5, dim)
    assert trace_distance(shifted, displace(make_fock_thermal(0.5, dim), 0.5)) < 1e-8
    coherent = gaussian_coherent_mixture(1.0j, 0.0, dim)
    assert trace_distance(coherent, make_fock_coherent(1.0j, dim)) < 1e-12


def test_squeezed_state_matches_gaussian_moments():
    """Fock squeezed vacuum has <n> = sinh^2 r and stays pure."""
    rho = make_fock_squeezed(0.4, 0.0, 40)
    assert mean_photon_number(rho) == pytest.approx(math.sinh(0.4) ** 2, abs=1e-8)
    assert purity(rho) == pytest.approx(1.0, abs=1e-8)


def test_two_point_state():
    """The two-point mixture meets the entropy constraint exactly."""
    rho = two_point_state(0.2, 3, 10)
    assert von_neumann_entropy_fock(rho).value == pytest.approx(g_bits(0.2), abs=1e-10)
    assert np.real(rho.matrix[0, 0]) >= 0.5
    with pytest.raises(DomainError):
        two_point_state(1.0, 3, 10)


def test_diagonal_state_tail():
    """Weights past the truncation count as tail mass."""
    rho = make_fock_diagonal([0.5, 0.5 - 1e-10, 1e-10], dim=2)
    assert rho.tail_mass == pytest.approx(1e-10, abs=1e-14)
    with pytest.raises(TruncationError):
        make_fock_diagonal([0.5, 0.4, 0.1], dim=2)


def test_wehrl_vacuum_and_thermal():
    """Numeric Wehrl entropies: 1 nat for vacuum, 1 + ln 2 for thermal(1)."""
    dim = 60
    assert wehrl_entropy_numeric(make_fock_number(0, dim)).value == pytest.approx(1.0, abs=1e-3)
    thermal = make_fock_thermal(1.0, dim)
    assert wehrl_entropy_numeric(thermal).value == pytest.approx(1 + math.log(2), abs=1e-3)


def test_wehrl_beam_splitter_output():
    """vacuum (x) thermal(1) at eta = 0.5: the c arm has 1 + ln 1.5 nats."""
    dim = 60
    rho_c, _ = propagate(make_fock_number(0, dim), make_fock_thermal(1.0, dim), 0.5)
    assert wehrl_entropy_numeric(rho_c).value == pytest.approx(1 + math.log(1.5), abs=1e-3)


def test_wehrl_scaling_identity():
    """Rescaling the Husimi function by x shifts the Wehrl entropy by ln x."""
    scaled, shifted = wehrl_scaling_check(make_fock_thermal(0.5, 50), 2.0)
    assert scaled == pytest.approx(shifted, abs=1e-4)


def test_wehrl_grid_too_small():
    """A radius that cuts off the Husimi function fails normalisation."""
    with pytest.raises(GridError):
        wehrl_entropy_numeric(make_fock_thermal(1.0, 40), HusimiGrid(radius=0.5))


@pytest.mark.slow
@pytest.mark.parametrize("beta", [0.0, 0.5, 1.0])
def test_coherent_region_quadrature(beta):
    """Fock-space rates of the coherent-state code match the closed forms."""
    params = ChannelParams(eta=0.8, nbar=2.0)
    result = coherent_region_quadrature(params, beta, QuadratureConfig(dim=50))
    assert result.r_b == pytest.approx(g_bits(0.8 * beta * 2.0), abs=1e-3)
    assert result.r_c == pytest.approx(g_bits(0.4) - g_bits(0.4 * beta), abs=1e-3)
    assert result.max_error <= 1e-3
    assert result.r_c <= g_bits(0.4) + 1e-3


def test_quadrature_requires_degraded_regime():
    """The quadrature is defined for eta > 1/2 only."""
    with pytest.raises(UnsupportedRegimeError):
        coherent_region_quadrature(ChannelParams(eta=0.4, nbar=1.0), 0.5)


def test_conjecture2_small_search():
    """A short search finds nothing below the thermal output entropy."""
    report = conjecture2_search(0.7, 1.0, 40, budget=60, seed=7)
    assert report.gap >= -1e-6
    assert abs(report.thermal_gap) < 1e-6
    assert report.constraint_residual <= 1e-9
    assert report.candidates_evaluated + report.candidates_skipped == 61
    assert report.target_entropy.value == pytest.approx(g_bits(0.3))
    assert report.to_dict()["dim"] == 40


def test_conjecture2_reproducible_across_threads():
    """Thread count never changes the report."""
    single = conjecture2_search(0.7, 1.0, 30, budget=24, seed=3, threads=1)
    pooled = conjecture2_search(0.7, 1.0, 30, budget=24, seed=3, threads=4)
    assert single.to_dict() == pooled.to_dict()


@pytest.mark.slow
def test_conjecture2_full_budget():
    """2000 candidates across all families: thermal stays optimal."""
    report = conjecture2_search(0.7, 1.0, 40, budget=2000, seed=11)
    assert report.best_entropy.value >= g_bits(0.3) - 1e-6
    assert abs(report.thermal_gap) < 1e-6


def test_conjecture2_validation():
    """Unknown families and too small truncations are refused."""
    with pytest.raises(DomainError):
        conjecture2_search(0.7, 1.0, 40, families=["bogus"])
    with pytest.raises(TruncationError):
        conjecture2_search(0.7, 5.0, 10)
    with pytest.raises(DomainError):
        conjecture2_search(1.0, 1.0, 40)


def test_conjecture1_local_check():
    """Perturbing the vacuum on port a never lowers the c-arm entropy."""
    report = conjecture1_local_check(0.7, 1.0, 40, perturbation_magnitudes=(0.05, 0.2), seed=5)
    assert report.holds
    assert report.vacuum_entropy_bits == pytest.approx(g_bits(0.3), abs=1e-9)
    assert len(report.rows) == 4 * 2 + 1
    fock_row = report.rows[-1]
    assert fock_row.family == "fock"
    assert fock_row.excess_bits > 0.0
    assert report.to_dict()["holds"] is True
