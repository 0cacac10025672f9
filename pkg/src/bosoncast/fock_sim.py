"""Truncated Fock-space simulation of the beam-splitter broadcast channel.

Single-mode density matrices live in span{|0>, ..., |dim-1>}. Probability
pushed beyond the truncation is recorded as ``tail_mass`` before the state is
renormalised, and builders refuse states whose tail exceeds the budget. The
tail belongs to the truncation that produced the matrix; states derived from
it record their own.

The beam splitter conserves total photon number, so it acts block by block
in that number. ``propagate`` evolves every block two truncated inputs can
populate in full and only truncates the reduced outputs. When port a holds
the vacuum the channel seen by each output is a pure-loss channel, evaluated
directly with Kraus operators.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss
from scipy.linalg import expm
from scipy.optimize import brentq
from scipy.special import gammaln, logsumexp, xlogy

from bosoncast.capacity_regions import ChannelParams
from bosoncast.entropy_core import LN2, Base, EntropyValue, g_bits
from bosoncast.errors import (
    DomainError,
    GridError,
    InvalidStateError,
    QuadratureError,
    TruncationError,
)
from bosoncast.reports import SearchReport
from bosoncast.utils import ordered_map

logger = logging.getLogger(__name__)

DEFAULT_TAIL_BUDGET = 1e-8
STATE_TOLERANCE = 1e-10
NEGATIVE_EIGENVALUE_LIMIT = 1e-9
CONSTRAINT_TOLERANCE = 1e-9
SEARCH_GAP_TOLERANCE = 1e-6
COMPONENT_CUTOFF = 1e-14

FOCK_FAMILIES = ("diagonal", "low_rank", "perturbed_thermal")
LOCAL_FAMILIES = ("coherent", "squeezed", "fock_mixture", "random_pure")


@dataclass(frozen=True, eq=False)
class FockDensityMatrix:
    """Truncated density matrix of one or two modes.

    Two-mode matrices index |n1, n2> as ``n1 * dim + n2``. ``tail_mass`` is
    the weight the producing truncation discarded before renormalising.
    """

    matrix: np.ndarray
    dim: int
    n_modes: int = 1
    tail_mass: float = 0.0
    label: str = ""

    def __post_init__(self) -> None:
        if self.n_modes not in (1, 2):
            raise InvalidStateError(f"n_modes must be 1 or 2, got {self.n_modes}")
        if int(self.dim) != self.dim or self.dim < 2:
            raise DomainError(f"dim must be an integer >= 2, got {self.dim}")
        size = self.dim**self.n_modes
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (size, size):
            raise InvalidStateError(f"matrix must be {size}x{size}, got {matrix.shape}")
        scale = max(1.0, float(np.abs(matrix).max()))
        if np.abs(matrix - matrix.conj().T).max() > STATE_TOLERANCE * scale:
            raise InvalidStateError("density matrix is not Hermitian")
        trace = float(np.real(np.trace(matrix)))
        if abs(trace - 1.0) > STATE_TOLERANCE:
            raise InvalidStateError(f"density matrix has trace {trace}, expected 1")
        if self.tail_mass < 0:
            raise InvalidStateError(f"tail mass must be >= 0, got {self.tail_mass}")
        matrix = 0.5 * (matrix + matrix.conj().T)
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "dim", int(self.dim))

    def descriptor(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "dim": self.dim,
            "n_modes": self.n_modes,
            "tail_mass": self.tail_mass,
        }


def _finalize(
    matrix: np.ndarray,
    dim: int,
    *,
    tail_budget: float | None,
    label: str = "",
    n_modes: int = 1,
    suggestion: str = "",
) -> FockDensityMatrix:
    """Renormalise a truncated matrix, recording and checking the lost mass."""
    trace = float(np.real(np.trace(matrix)))
    if trace <= 0:
        raise TruncationError(f"no probability left inside dim={dim}{suggestion}")
    tail = max(0.0, 1.0 - trace)
    if tail_budget is not None and tail > tail_budget:
        raise TruncationError(
            f"truncation at dim={dim} discards {tail:.3e} probability "
            f"(budget {tail_budget:.1e}){suggestion}"
        )
    return FockDensityMatrix(matrix / trace, dim, n_modes, tail, label)


def thermal_dim(k: float, tail_budget: float = DEFAULT_TAIL_BUDGET) -> int:
    """Smallest dim whose thermal tail (K/(K+1))^dim is below the budget."""
    if k <= 0:
        return 2
    ratio = k / (k + 1.0)
    return max(2, math.ceil(math.log(tail_budget) / math.log(ratio)) + 1)


def coherent_dim(alpha: complex) -> int:
    """Poisson-tail rule of thumb |alpha|^2 + 10|alpha| + 20."""
    a = abs(alpha)
    return int(math.ceil(a * a + 10.0 * a + 20.0))


def _check_dim(dim: int) -> int:
    if int(dim) != dim or dim < 2:
        raise DomainError(f"dim must be an integer >= 2, got {dim}")
    return int(dim)


def make_fock_thermal(
    k: float, dim: int | None = None, tail_budget: float | None = DEFAULT_TAIL_BUDGET
) -> FockDensityMatrix:
    """Thermal state with Bose-Einstein weights (K/(K+1))^n / (K+1)."""
    if not math.isfinite(k) or k < 0:
        raise DomainError(f"thermal photon number must be finite and >= 0, got {k}")
    dim = _check_dim(thermal_dim(k) if dim is None else dim)
    n = np.arange(dim)
    weights = np.exp(xlogy(n, k / (k + 1.0)) - math.log1p(k)) if k > 0 else (n == 0) * 1.0
    return _finalize(
        np.diag(weights),
        dim,
        tail_budget=tail_budget,
        label=f"thermal(k={k})",
        suggestion=f"; use dim >= {thermal_dim(k, tail_budget or DEFAULT_TAIL_BUDGET)}",
    )


def coherent_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    """Fock amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n < dim."""
    n = np.arange(dim)
    mag = abs(alpha)
    log_amp = -0.5 * mag * mag + xlogy(n, mag) - 0.5 * gammaln(n + 1)
    return np.exp(log_amp) * np.exp(1j * n * np.angle(alpha))


def make_fock_coherent(
    alpha: complex, dim: int | None = None, tail_budget: float | None = DEFAULT_TAIL_BUDGET
) -> FockDensityMatrix:
    """Coherent state |alpha><alpha| with Poisson amplitudes."""
    alpha = complex(alpha)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise DomainError(f"coherent amplitude must be finite, got {alpha}")
    dim = _check_dim(coherent_dim(alpha) if dim is None else dim)
    psi = coherent_amplitudes(alpha, dim)
    return _finalize(
        np.outer(psi, psi.conj()),
        dim,
        tail_budget=tail_budget,
        label=f"coherent(alpha={alpha})",
        suggestion=f"; use dim >= {coherent_dim(alpha)}",
    )


def make_fock_diagonal(
    probs: Sequence[float], dim: int, tail_budget: float | None = DEFAULT_TAIL_BUDGET
) -> FockDensityMatrix:
    """Photon-number mixture sum_n p_n |n><n|; weights past dim count as tail."""
    dim = _check_dim(dim)
    probs = np.asarray(probs, dtype=float)
    if probs.ndim != 1 or np.any(probs < 0) or not np.all(np.isfinite(probs)):
        raise DomainError("photon-number weights must be finite and non-negative")
    total = probs.sum()
    if total <= 0:
        raise DomainError("photon-number weights must not all vanish")
    kept = np.zeros(dim)
    kept[: min(dim, len(probs))] = probs[:dim] / total
    return _finalize(
        np.diag(kept),
        dim,
        tail_budget=tail_budget,
        label="diagonal",
        suggestion=f"; use dim >= {len(probs)}",
    )


def make_fock_number(n: int, dim: int) -> FockDensityMatrix:
    """Number state |n><n|."""
    dim = _check_dim(dim)
    if int(n) != n or not 0 <= n < dim:
        raise DomainError(f"photon number must be an integer in [0, {dim}), got {n}")
    matrix = np.zeros((dim, dim), dtype=complex)
    matrix[n, n] = 1.0
    return FockDensityMatrix(matrix, dim, label=f"fock(n={n})")


def destroy(dim: int) -> np.ndarray:
    """Truncated annihilation operator."""
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def _apply_padded(
    rho: FockDensityMatrix,
    generator: np.ndarray,
    pad: int,
    label: str,
    tail_budget: float | None,
) -> FockDensityMatrix:
    size = rho.dim + pad
    embedded = np.zeros((size, size), dtype=complex)
    embedded[: rho.dim, : rho.dim] = rho.matrix
    unitary = expm(generator)
    moved = unitary @ embedded @ unitary.conj().T
    return _finalize(
        moved[: rho.dim, : rho.dim],
        rho.dim,
        tail_budget=tail_budget,
        label=label,
        suggestion="; increase dim",
    )


def displace(
    rho: FockDensityMatrix,
    alpha: complex,
    pad: int | None = None,
    tail_budget: float | None = DEFAULT_TAIL_BUDGET,
) -> FockDensityMatrix:
    """D(alpha) rho D(alpha)^dagger, computed in a padded space and truncated back."""
    pad = coherent_dim(alpha) if pad is None else pad
    a = destroy(rho.dim + pad)
    generator = alpha * a.conj().T - np.conj(alpha) * a
    return _apply_padded(rho, generator, pad, f"displaced({rho.label})", tail_budget)


def squeeze(
    rho: FockDensityMatrix,
    r: float,
    phase: float = 0.0,
    pad: int | None = None,
    tail_budget: float | None = DEFAULT_TAIL_BUDGET,
) -> FockDensityMatrix:
    """S(xi) rho S(xi)^dagger with S(xi) = exp((xi^* a^2 - xi a^dagger^2)/2), xi = r e^{i phase}."""
    pad = int(math.ceil(40.0 * math.sinh(abs(r)) ** 2)) + 20 if pad is None else pad
    a = destroy(rho.dim + pad)
    xi = r * complex(math.cos(phase), math.sin(phase))
    generator = 0.5 * (np.conj(xi) * a @ a - xi * a.conj().T @ a.conj().T)
    return _apply_padded(rho, generator, pad, f"squeezed({rho.label})", tail_budget)


def make_fock_squeezed(
    r: float, phase: float, dim: int, tail_budget: float | None = DEFAULT_TAIL_BUDGET
) -> FockDensityMatrix:
    """Squeezed vacuum truncated to dim."""
    return squeeze(make_fock_number(0, dim), r, phase, tail_budget=tail_budget)


def binary_entropy_bits(p: float) -> float:
    return float(-(xlogy(p, p) + xlogy(1.0 - p, 1.0 - p)) / LN2)


def two_point_state(k: float, m: int, dim: int) -> FockDensityMatrix:
    """p|0><0| + (1-p)|m><m| with binary entropy h(p) = g(K), p >= 1/2.

    Exists only while g(K) <= 1 bit.
    """
    target = g_bits(k)
    if target > 1.0:
        raise DomainError(f"g({k}) = {target:.4f} bits exceeds the 1 bit of a two-point mixture")
    if not 0 < m < dim:
        raise DomainError(f"m must lie in (0, {dim}), got {m}")
    p = 1.0
    if target > 0:
        p = brentq(lambda q: binary_entropy_bits(q) - target, 0.5, 1.0, xtol=1e-15)
    probs = np.zeros(dim)
    probs[0], probs[m] = p, 1.0 - p
    state = make_fock_diagonal(probs, dim)
    return FockDensityMatrix(state.matrix, dim, label=f"two_point(m={m}, p={p:.12g})")


def mean_photon_number(rho: FockDensityMatrix) -> float:
    """<n> of a single-mode state."""
    return float(np.real(np.trace(rho.matrix @ np.diag(np.arange(rho.dim)))))


def mean_amplitude(rho: FockDensityMatrix) -> complex:
    """<a> of a single-mode state."""
    return complex(np.trace(rho.matrix @ destroy(rho.dim)))


def purity(rho: FockDensityMatrix) -> float:
    """Tr rho^2."""
    return float(np.real(np.sum(rho.matrix * rho.matrix.T)))


def trace_distance(rho: FockDensityMatrix, sigma: FockDensityMatrix) -> float:
    """Half the trace norm of rho - sigma."""
    if rho.matrix.shape != sigma.matrix.shape:
        raise DomainError("trace distance needs states of equal dimension")
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(rho.matrix - sigma.matrix))))


def _spectrum_entropy_nats(eigenvalues: np.ndarray) -> float:
    if eigenvalues.min() < -NEGATIVE_EIGENVALUE_LIMIT:
        raise InvalidStateError(
            f"density matrix has eigenvalue {eigenvalues.min():.3e} below zero"
        )
    p = np.clip(eigenvalues, 0.0, None)
    return float(-np.sum(xlogy(p, p)))


def von_neumann_entropy_fock(
    rho: FockDensityMatrix, base: Base | str = Base.BITS
) -> EntropyValue:
    """-Tr rho log rho from the eigenvalues of rho."""
    return EntropyValue.from_nats(_spectrum_entropy_nats(np.linalg.eigvalsh(rho.matrix)), base)


def holevo_chi(
    ensemble: Sequence[tuple[float, FockDensityMatrix]], base: Base | str = Base.BITS
) -> EntropyValue:
    """Holevo information S(sum p_j sigma_j) - sum p_j S(sigma_j).

    Args:
        ensemble: (probability, state) pairs; probabilities sum to 1
        base: Output base

    Returns:
        Holevo information, never negative
    """
    if not ensemble:
        raise DomainError("ensemble must not be empty")
    probs = np.array([p for p, _ in ensemble], dtype=float)
    if np.any(probs < 0) or abs(math.fsum(probs) - 1.0) > 1e-12:
        raise DomainError(f"ensemble probabilities must be >= 0 and sum to 1, got {probs.sum()!r}")
    shapes = {state.matrix.shape for _, state in ensemble}
    if len(shapes) != 1:
        raise DomainError(f"ensemble members have mismatched dimensions {sorted(shapes)}")

    average = sum(p * state.matrix for p, state in ensemble)
    average = 0.5 * (average + average.conj().T)
    mixed = _spectrum_entropy_nats(np.linalg.eigvalsh(average))
    members = math.fsum(
        p * _spectrum_entropy_nats(np.linalg.eigvalsh(state.matrix)) for p, state in ensemble
    )
    return EntropyValue.from_nats(mixed - members, base)


def _check_eta(eta: float, open_interval: bool = False) -> float:
    eta = float(eta)
    ok = 0.0 < eta < 1.0 if open_interval else 0.0 <= eta <= 1.0
    if not math.isfinite(eta) or not ok:
        bounds = "(0, 1)" if open_interval else "[0, 1]"
        raise DomainError(f"eta must lie in {bounds}, got {eta}")
    return eta


def _block_unitary(theta: float, n1s: np.ndarray, total: int) -> np.ndarray:
    """exp(theta (a^dagger b - a b^dagger)) on the basis |n1, total - n1>, n1 in n1s."""
    size = len(n1s)
    raising = np.zeros((size, size))
    for j in range(size - 1):
        n1 = n1s[j]
        raising[j + 1, j] = math.sqrt((n1 + 1) * (total - n1))
    return expm(theta * (raising - raising.T))


def beam_splitter_unitary(eta: float, dim: int) -> np.ndarray:
    """Two-mode beam-splitter unitary on the truncated product space.

    Generated by theta (a^dagger b - a b^dagger), theta = arccos sqrt(eta),
    so a photon entering a leaves in c with amplitude sqrt(eta) and in d with
    amplitude -sqrt(1 - eta). Blocks of total photon number >= dim are cut
    by the truncation; they are exponentiated within the retained states and
    stay unitary.

    Args:
        eta: Transmissivity in [0, 1]
        dim: Truncation per mode

    Returns:
        dim^2 x dim^2 unitary, basis index n1 * dim + n2
    """
    eta, dim = _check_eta(eta), _check_dim(dim)
    theta = math.acos(math.sqrt(eta))
    unitary = np.zeros((dim * dim, dim * dim))
    for total in range(2 * dim - 1):
        n1s = np.arange(max(0, total - dim + 1), min(total, dim - 1) + 1)
        idx = n1s * dim + (total - n1s)
        unitary[np.ix_(idx, idx)] = _block_unitary(theta, n1s, total)
    return unitary


@lru_cache(maxsize=4)
def _number_blocks(eta: float, dim: int) -> tuple[np.ndarray, ...]:
    """Full beam-splitter blocks for every total photon number two dim-level inputs can hold."""
    theta = math.acos(math.sqrt(eta))
    blocks = tuple(
        _block_unitary(theta, np.arange(total + 1), total) for total in range(2 * dim - 1)
    )
    for block in blocks:
        block.flags.writeable = False
    return blocks


def _input_levels(total: int, dim: int) -> np.ndarray:
    """n1 values of |n1, total - n1> with both numbers below dim."""
    return np.arange(max(0, total - dim + 1), min(total, dim - 1) + 1)


def _is_diagonal(rho: FockDensityMatrix) -> bool:
    off = rho.matrix - np.diag(np.diag(rho.matrix))
    return float(np.abs(off).max()) < 1e-15


def _diagonal_outputs(
    p: np.ndarray, q: np.ndarray, blocks: Sequence[np.ndarray]
) -> tuple[np.ndarray, np.ndarray]:
    """Output photon statistics of two number-diagonal inputs; both outputs stay diagonal."""
    dim = len(p)
    out_c = np.zeros(2 * dim - 1)
    out_d = np.zeros(2 * dim - 1)
    for total, block in enumerate(blocks):
        n1 = _input_levels(total, dim)
        weights = p[n1] * q[total - n1]
        if not weights.any():
            continue
        probs = (block[:, n1] ** 2) @ weights
        out_c[: total + 1] += probs
        out_d[: total + 1] += probs[::-1]
    return np.diag(out_c).astype(complex), np.diag(out_d).astype(complex)


def _pure_components(rho: FockDensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition without the rounding-level components."""
    weights, vectors = np.linalg.eigh(rho.matrix)
    keep = weights > COMPONENT_CUTOFF
    return weights[keep], vectors[:, keep]


def _mixed_outputs(
    rho_a: FockDensityMatrix,
    rho_b: FockDensityMatrix,
    blocks: Sequence[np.ndarray],
    chunk: int = 32,
) -> tuple[np.ndarray, np.ndarray]:
    """Reduced outputs of general inputs, one pure product component at a time.

    Amplitudes are indexed [m, k, j] over output numbers (m in c, k in d) and
    a chunk of b components, so memory grows like dim^2 * chunk.
    """
    dim = rho_a.dim
    size = 2 * dim - 1
    weights_a, vectors_a = _pure_components(rho_a)
    weights_b, vectors_b = _pure_components(rho_b)
    columns_b = vectors_b * np.sqrt(weights_b)
    out_c = np.zeros((size, size), dtype=complex)
    out_d = np.zeros((size, size), dtype=complex)
    for weight, psi in zip(weights_a, vectors_a.T, strict=True):
        for start in range(0, columns_b.shape[1], chunk):
            cols = columns_b[:, start : start + chunk]
            amps = np.zeros((size, size, cols.shape[1]), dtype=complex)
            for total, block in enumerate(blocks):
                n1 = _input_levels(total, dim)
                m = np.arange(total + 1)
                amps[m, total - m, :] = block[:, n1] @ (psi[n1, None] * cols[total - n1, :])
            flat = amps.reshape(size, -1)
            out_c += weight * (flat @ flat.conj().T)
            flat = amps.transpose(1, 0, 2).reshape(size, -1)
            out_d += weight * (flat @ flat.conj().T)
    return out_c, out_d


def _propagate_exact(
    rho_a: FockDensityMatrix,
    rho_b: FockDensityMatrix,
    eta: float,
    tail_budget: float | None = DEFAULT_TAIL_BUDGET,
) -> tuple[FockDensityMatrix, FockDensityMatrix]:
    """Evolve every total-number block in full, then truncate each output arm to dim."""
    dim = rho_a.dim
    blocks = _number_blocks(eta, dim)
    if _is_diagonal(rho_a) and _is_diagonal(rho_b):
        full_c, full_d = _diagonal_outputs(
            np.real(np.diag(rho_a.matrix)), np.real(np.diag(rho_b.matrix)), blocks
        )
    else:
        full_c, full_d = _mixed_outputs(rho_a, rho_b, blocks)
    logger.debug("propagate: dim=%d, %d number blocks", dim, len(blocks))
    return (
        _finalize(
            full_c[:dim, :dim], dim, tail_budget=tail_budget, label="c", suggestion="; use a larger dim"
        ),
        _finalize(
            full_d[:dim, :dim], dim, tail_budget=tail_budget, label="d", suggestion="; use a larger dim"
        ),
    )


def _is_vacuum(rho: FockDensityMatrix) -> bool:
    off = rho.matrix.copy()
    off[0, 0] -= 1.0
    return float(np.abs(off).max()) < 1e-15


@lru_cache(maxsize=64)
def _loss_kraus(tau: float, dim: int) -> np.ndarray:
    """Kraus operators A_k[j, j+k] = sqrt(C(j+k, k) tau^j (1-tau)^k) of the pure-loss channel."""
    k = np.arange(dim)[:, None]
    j = np.arange(dim)[None, :]
    valid = (j + k) < dim
    log_amp = 0.5 * (
        gammaln(j + k + 1) - gammaln(j + 1) - gammaln(k + 1) + xlogy(j, tau) + xlogy(k, 1.0 - tau)
    )
    kraus = np.zeros((dim, dim, dim))
    kk, jj = np.nonzero(valid)
    kraus[kk, jj, jj + kk] = np.exp(log_amp[kk, jj])
    kraus.flags.writeable = False
    return kraus


def attenuate(
    rho: FockDensityMatrix, tau: float, tail_budget: float | None = DEFAULT_TAIL_BUDGET
) -> FockDensityMatrix:
    """Pure-loss channel of transmissivity tau (vacuum on the other beam-splitter port).

    Loss never raises the photon number, so the output fits in rho's space.
    """
    tau = _check_eta(tau)
    kraus = _loss_kraus(tau, rho.dim)
    out = np.sum(kraus @ rho.matrix @ kraus.transpose(0, 2, 1), axis=0)
    return _finalize(out, rho.dim, tail_budget=tail_budget, label="attenuated")


def propagate(
    rho_a: FockDensityMatrix,
    rho_b: FockDensityMatrix,
    eta: float,
    tail_budget: float | None = DEFAULT_TAIL_BUDGET,
) -> tuple[FockDensityMatrix, FockDensityMatrix]:
    """Send rho_a (x) rho_b through the beam splitter and trace out each arm.

    The outputs can hold up to 2 dim - 2 photons; the weight they carry at or
    above dim is the recorded tail of each arm and is held to the budget.

    Args:
        rho_a: Single-mode input on port a
        rho_b: Single-mode input on port b, same dim
        eta: Transmissivity in [0, 1]
        tail_budget: Largest output weight the truncation may discard, None to only record it

    Returns:
        (rho_c, rho_d) reduced output states

    Raises:
        TruncationError: An output arm loses more than tail_budget to the truncation
    """
    eta = _check_eta(eta)
    if rho_a.n_modes != 1 or rho_b.n_modes != 1:
        raise DomainError("propagate takes single-mode inputs")
    if rho_a.dim != rho_b.dim:
        raise DomainError(f"input dims differ: {rho_a.dim} vs {rho_b.dim}")
    if _is_vacuum(rho_a):
        return attenuate(rho_b, 1.0 - eta, tail_budget), attenuate(rho_b, eta, tail_budget)
    return _propagate_exact(rho_a, rho_b, eta, tail_budget)


def gaussian_coherent_mixture(
    center: complex,
    spread: float,
    dim: int,
    nodes: int | None = None,
    tail_budget: float | None = None,
) -> FockDensityMatrix:
    """int (1/(pi s)) exp(-|alpha - center|^2 / s) |alpha><alpha| d^2 alpha in Fock space.

    Folding the coherent-state envelope e^{-|alpha|^2} into the Gaussian
    weight leaves a polynomial integrand, so a Gauss-Hermite product rule
    with ``dim`` nodes per axis is exact up to roundoff. ``spread = 0`` is the
    coherent state itself.

    Args:
        center: Mean amplitude
        spread: Mean thermal photon number s >= 0 of the mixture
        dim: Truncation
        nodes: Gauss-Hermite nodes per axis, at least dim by default
        tail_budget: Optional truncation budget

    Returns:
        Renormalised density matrix with its tail mass
    """
    dim = _check_dim(dim)
    if not math.isfinite(spread) or spread < 0:
        raise DomainError(f"spread must be finite and >= 0, got {spread}")
    center = complex(center)
    if spread == 0:
        psi = coherent_amplitudes(center, dim)
        return _finalize(np.outer(psi, psi.conj()), dim, tail_budget=tail_budget, label="coherent")

    nodes = max(dim, nodes or 0)
    u, w = hermgauss(nodes)
    shrink = spread / (1.0 + spread)
    alphas = (center / (1.0 + spread)) + math.sqrt(shrink) * (u[:, None] + 1j * u[None, :])
    log_w = (np.log(w)[:, None] + np.log(w)[None, :]).reshape(-1) - math.log(math.pi)
    alphas = alphas.reshape(-1)
    log_pref = -math.log1p(spread) - abs(center) ** 2 / (1.0 + spread)

    n = np.arange(dim)[:, None]
    log_amp = (
        xlogy(n, np.abs(alphas)[None, :])
        - 0.5 * gammaln(n + 1)
        + 0.5 * (log_w[None, :] + log_pref)
    )
    phi = np.exp(log_amp + 1j * n * np.angle(alphas)[None, :])
    return _finalize(phi @ phi.conj().T, dim, tail_budget=tail_budget, label="gaussian_mixture")


def coherent_ensemble(
    nbar: float, nodes: int, dim: int
) -> list[tuple[float, FockDensityMatrix]]:
    """Isotropic Gaussian coherent-state ensemble with <|alpha|^2> = nbar on a Gauss-Hermite grid."""
    if not math.isfinite(nbar) or nbar <= 0:
        raise DomainError(f"nbar must be finite and > 0, got {nbar}")
    u, w = hermgauss(nodes)
    scale = math.sqrt(nbar)
    ensemble = []
    for ui, wi in zip(u, w, strict=True):
        for vj, wj in zip(u, w, strict=True):
            state = make_fock_coherent(scale * complex(ui, vj), dim, tail_budget=None)
            ensemble.append((wi * wj / math.pi, state))
    total = math.fsum(p for p, _ in ensemble)
    return [(p / total, state) for p, state in ensemble]


@dataclass(frozen=True)
class QuadratureConfig:
    """Grid settings of the coherent-state rate-region quadrature."""

    dim: int = 50
    outer_nodes: int = 8
    inner_nodes: int | None = None
    tolerance: float = 1e-3
    tail_budget: float = DEFAULT_TAIL_BUDGET
    threads: int = 1

    def __post_init__(self) -> None:
        _check_dim(self.dim)
        if self.outer_nodes < 2:
            raise DomainError(f"outer_nodes must be >= 2, got {self.outer_nodes}")
        if self.tolerance <= 0:
            raise DomainError(f"tolerance must be > 0, got {self.tolerance}")


@dataclass(frozen=True)
class QuadratureResult:
    """Numerical rates next to their closed forms (bits per use)."""

    r_b: float
    r_c: float
    r_b_closed: float
    r_c_closed: float
    tail_mass: float
    outer_nodes: int

    @property
    def max_error(self) -> float:
        return max(abs(self.r_b - self.r_b_closed), abs(self.r_c - self.r_c_closed))

    def to_dict(self) -> dict[str, float]:
        return {
            "r_b_numeric": self.r_b,
            "r_c_numeric": self.r_c,
            "r_b_closed_form": self.r_b_closed,
            "r_c_closed_form": self.r_c_closed,
            "max_error": self.max_error,
            "tail_mass": self.tail_mass,
            "outer_nodes": self.outer_nodes,
        }


def _conditional_rates(
    params: ChannelParams, beta: float, config: QuadratureConfig, order: int
) -> tuple[float, float, float]:
    eta_b, eta_c, nbar = params.eta, params.charlie_gain, params.nbar
    u, w = hermgauss(order)
    scale = math.sqrt(nbar)
    outer = [
        (wi * wj / math.pi, scale * complex(ui, vj))
        for ui, wi in zip(u, w, strict=True)
        for vj, wj in zip(u, w, strict=True)
    ]
    keep = math.sqrt(1.0 - beta)

    def conditional(node: tuple[float, complex]) -> tuple[float, float, float]:
        weight, t = node
        bob = gaussian_coherent_mixture(
            math.sqrt(eta_b) * keep * t, eta_b * beta * nbar, config.dim, config.inner_nodes
        )
        charlie = gaussian_coherent_mixture(
            math.sqrt(eta_c) * keep * t, eta_c * beta * nbar, config.dim, config.inner_nodes
        )
        return (
            weight * von_neumann_entropy_fock(bob).bits,
            weight * von_neumann_entropy_fock(charlie).bits,
            weight * (bob.tail_mass + charlie.tail_mass),
        )

    parts = ordered_map(conditional, outer, config.threads)
    total_c = gaussian_coherent_mixture(0.0, eta_c * nbar, config.dim, config.inner_nodes)
    r_b = math.fsum(p[0] for p in parts)
    r_c = von_neumann_entropy_fock(total_c).bits - math.fsum(p[1] for p in parts)
    tail = math.fsum(p[2] for p in parts) + total_c.tail_mass
    return r_b, r_c, tail


def coherent_region_quadrature(
    params: ChannelParams, beta: float, grid_config: QuadratureConfig | None = None
) -> QuadratureResult:
    """Numerically evaluate the coherent-state rates to Bob and Charlie at split beta.

    The cloud-center variable T is integrated with a Gauss-Hermite product
    rule; for every node the conditional output states of both receivers are
    Gaussian mixtures of coherent states built in Fock space. Two rule orders
    are compared as a convergence monitor.

    Args:
        params: Channel parameters, eta > 1/2
        beta: Power fraction carrying Bob's message
        grid_config: Truncation, node counts and tolerance

    Returns:
        Numerical and closed-form rate pair
    """
    config = grid_config or QuadratureConfig()
    params.require_degraded()
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")

    coarse = _conditional_rates(params, beta, config, config.outer_nodes)
    fine = _conditional_rates(params, beta, config, config.outer_nodes + 2)
    drift = max(abs(fine[0] - coarse[0]), abs(fine[1] - coarse[1]))
    if drift > config.tolerance / 10:
        raise QuadratureError(
            f"outer quadrature not converged: rates move by {drift:.3e} between "
            f"{config.outer_nodes} and {config.outer_nodes + 2} nodes per axis"
        )
    r_b, r_c, tail = fine
    if tail > config.tail_budget:
        raise TruncationError(
            f"quadrature states lose {tail:.3e} probability at dim={config.dim}; increase dim"
        )

    eta_c, nbar = params.charlie_gain, params.nbar
    r_c_closed = g_bits(eta_c * nbar) - g_bits(eta_c * beta * nbar)
    if r_c > g_bits(eta_c * nbar) + config.tolerance:
        logger.warning("Charlie's numeric rate %.6f exceeds g(eta_c nbar)", r_c)
    logger.info("quadrature beta=%s: r_b=%.9f r_c=%.9f", beta, r_b, r_c)
    return QuadratureResult(
        r_b=max(r_b, 0.0),
        r_c=max(r_c, 0.0),
        r_b_closed=g_bits(params.eta * beta * nbar),
        r_c_closed=max(r_c_closed, 0.0),
        tail_mass=tail,
        outer_nodes=config.outer_nodes + 2,
    )


@dataclass(frozen=True)
class HusimiGrid:
    """Polar phase-space grid: Gauss-Legendre in radius, uniform in angle."""

    radial_nodes: int = 200
    angular_nodes: int = 128
    radius: float | None = None
    normalization_tolerance: float = 1e-4


def _husimi_samples(
    rho: FockDensityMatrix, grid: HusimiGrid, scale: float = 1.0
) -> tuple[np.ndarray, np.ndarray]:
    """Husimi values (1/scale) Q(mu / sqrt(scale)) and quadrature weights on the grid."""
    if rho.n_modes != 1:
        raise DomainError("Husimi functions are computed for single-mode states")
    radius = grid.radius
    if radius is None:
        radius = abs(mean_amplitude(rho)) + 6.0 * math.sqrt(mean_photon_number(rho) + 1.0)
    radius *= math.sqrt(scale)

    x, wx = leggauss(grid.radial_nodes)
    r = 0.5 * radius * (x + 1.0)
    wr = 0.5 * radius * wx * r
    theta = 2.0 * math.pi * np.arange(grid.angular_nodes) / grid.angular_nodes
    weights = np.repeat(wr, grid.angular_nodes) * (2.0 * math.pi / grid.angular_nodes)

    rr = np.repeat(r, grid.angular_nodes) / math.sqrt(scale)
    tt = np.tile(theta, grid.radial_nodes)
    n = np.arange(rho.dim)[:, None]
    psi = np.exp(-0.5 * rr**2 + xlogy(n, rr[None, :]) - 0.5 * gammaln(n + 1) + 1j * n * tt)
    q = np.real(np.sum(psi.conj() * (rho.matrix @ psi), axis=0)) / math.pi / scale
    return np.clip(q, 0.0, None), weights


def _wehrl_from_samples(q: np.ndarray, weights: np.ndarray, tolerance: float) -> float:
    norm = float(np.dot(weights, q))
    if abs(norm - 1.0) > tolerance:
        raise GridError(
            f"Husimi function integrates to {norm:.6f}; enlarge the radius or add nodes"
        )
    return float(-np.dot(weights, xlogy(q, q) + q * math.log(math.pi)))


def wehrl_entropy_numeric(
    rho: FockDensityMatrix, grid_config: HusimiGrid | None = None
) -> EntropyValue:
    """Wehrl entropy -int Q ln(pi Q) d^2 mu, Q = <mu|rho|mu>/pi, in nats."""
    grid = grid_config or HusimiGrid()
    q, weights = _husimi_samples(rho, grid)
    return EntropyValue(max(0.0, _wehrl_from_samples(q, weights, grid.normalization_tolerance)), Base.NATS)


def wehrl_scaling_check(
    rho: FockDensityMatrix, x: float, grid_config: HusimiGrid | None = None
) -> tuple[float, float]:
    """Wehrl entropy of (1/x) Q(mu/sqrt(x)) next to W[Q] + ln x; the two agree."""
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"scale must be finite and > 0, got {x}")
    grid = grid_config or HusimiGrid()
    q, weights = _husimi_samples(rho, grid)
    base = _wehrl_from_samples(q, weights, grid.normalization_tolerance)
    q_scaled, weights_scaled = _husimi_samples(rho, grid, scale=x)
    scaled = _wehrl_from_samples(q_scaled, weights_scaled, grid.normalization_tolerance)
    return scaled, base + math.log(x)


@dataclass(frozen=True)
class _Spectrum:
    """A candidate input: orthonormal eigenvectors and unnormalised weights."""

    candidate_id: int
    family: str
    basis: np.ndarray
    weights: np.ndarray
    params: dict[str, Any] = field(default_factory=dict)


def _tempered(log_weights: np.ndarray, beta: float) -> np.ndarray:
    scaled = beta * log_weights
    return np.exp(scaled - logsumexp(scaled))


def _entropy_bits(p: np.ndarray) -> float:
    return float(-np.sum(xlogy(p, p)) / LN2)


def _solve_temperature(weights: np.ndarray, target: float, tolerance: float) -> float | None:
    """Inverse temperature beta with H(w^beta / Z) = target, or None when out of reach.

    The entropy of the tempered weights falls monotonically from log2(m) at
    beta = 0 towards zero as beta grows.
    """
    log_w = np.log(weights)
    if _entropy_bits(_tempered(log_w, 0.0)) <= target + tolerance:
        return None
    hi = 1.0
    while _entropy_bits(_tempered(log_w, hi)) > target:
        hi *= 2.0
        if hi > 1e8:
            return None
    beta = brentq(lambda b: _entropy_bits(_tempered(log_w, b)) - target, 0.0, hi, xtol=1e-15)
    if abs(_entropy_bits(_tempered(log_w, beta)) - target) > tolerance:
        return None
    return beta


def _orthonormal(vectors: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(vectors)
    d = np.diag(r)
    return q * np.where(np.abs(d) > 0, d / np.abs(d), 1.0)


def _thermal_spectrum(k: float, dim: int) -> _Spectrum:
    n = np.arange(dim)
    return _Spectrum(0, "thermal", np.eye(dim), (k / (k + 1.0)) ** n, {"k": k})


def _draw_spectrum(
    candidate_id: int, family: str, k: float, dim: int, rng: np.random.Generator
) -> _Spectrum:
    levels = min(dim, 24)
    if family == "diagonal":
        size = int(rng.integers(2, levels + 1))
        support = np.sort(rng.choice(levels, size=size, replace=False))
        weights = rng.dirichlet(np.ones(size))
        return _Spectrum(
            candidate_id,
            family,
            np.eye(dim)[:, support],
            weights,
            {"support": support.tolist()},
        )
    if family == "low_rank":
        rank = int(rng.integers(2, 9))
        span = min(dim, 16)
        decay = np.exp(-np.arange(span) / (2.0 * (k + 1.0)))[:, None]
        raw = (rng.standard_normal((span, rank)) + 1j * rng.standard_normal((span, rank))) * decay
        basis = np.zeros((dim, rank), dtype=complex)
        basis[:span] = _orthonormal(raw)
        return _Spectrum(
            candidate_id, family, basis, rng.dirichlet(np.ones(rank)), {"rank": rank}
        )

    # perturbed_thermal: displaced and squeezed Fock basis, geometric weights
    alpha = rng.uniform(0.0, 0.5) * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
    r = rng.uniform(0.0, 0.5)
    phase = rng.uniform(0.0, 2.0 * math.pi)
    k0 = k * rng.uniform(0.5, 1.5)
    pad = coherent_dim(alpha) + 20
    size = dim + pad
    a = destroy(size)
    xi = r * np.exp(1j * phase)
    mover = expm(alpha * a.conj().T - np.conj(alpha) * a) @ expm(
        0.5 * (np.conj(xi) * a @ a - xi * a.conj().T @ a.conj().T)
    )
    keep = max(2, dim - 10)
    basis = _orthonormal(mover[:dim, :keep])
    weights = (k0 / (k0 + 1.0)) ** np.arange(keep)
    return _Spectrum(
        candidate_id,
        family,
        basis,
        weights,
        {"alpha": [float(alpha.real), float(alpha.imag)], "r": r, "phase": phase, "k0": k0},
    )


@dataclass(frozen=True)
class FockSearchConfig:
    """Knobs of the single-mode conjecture-2 search."""

    families: tuple[str, ...] = FOCK_FAMILIES
    budget: int = 2000
    seed: int = 0
    tolerance: float = CONSTRAINT_TOLERANCE
    threads: int = 1

    def __post_init__(self) -> None:
        unknown = set(self.families) - set(FOCK_FAMILIES)
        if unknown or not self.families:
            raise DomainError(
                f"families must be a non-empty subset of {FOCK_FAMILIES}, got {self.families}"
            )
        if self.budget < 0:
            raise DomainError(f"budget must be >= 0, got {self.budget}")


def conjecture2_search(
    eta: float,
    k: float,
    dim: int,
    families: Sequence[str] = FOCK_FAMILIES,
    budget: int = 2000,
    seed: int = 0,
    threads: int = 1,
    tolerance: float = CONSTRAINT_TOLERANCE,
) -> SearchReport:
    """Look for a single-mode input of entropy g(K) beating the thermal output entropy.

    Port a holds the vacuum and port b a candidate state. Every candidate is
    a fixed eigenbasis with tempered eigenvalues w_i^beta / Z; beta is solved
    by bisection so that S(rho_b) = g(K), which keeps the constraint exact.
    Candidates whose tempering cannot reach g(K) are skipped and counted.
    The thermal state is always evaluated as candidate 0.

    Args:
        eta: Transmissivity in (0, 1)
        k: Thermal photon number fixing the input entropy g(K)
        dim: Fock truncation
        families: Candidate families to draw from, round robin
        budget: Number of random candidates
        seed: Seed of the candidate generator
        threads: Worker threads for candidate evaluation
        tolerance: Allowed constraint residual in bits

    Returns:
        Search report with the lowest output entropy found
    """
    config = FockSearchConfig(tuple(families), budget, seed, tolerance, threads)
    eta = _check_eta(eta, open_interval=True)
    if not math.isfinite(k) or k <= 0:
        raise DomainError(f"k must be finite and > 0, got {k}")
    dim = _check_dim(dim)
    if (k / (k + 1.0)) ** dim > DEFAULT_TAIL_BUDGET:
        raise TruncationError(
            f"thermal({k}) needs dim >= {thermal_dim(k)} for the tail budget, got {dim}"
        )

    target_input = g_bits(k)
    rng = np.random.default_rng(seed)
    spectra = [_thermal_spectrum(k, dim)]
    for i in range(budget):
        family = config.families[i % len(config.families)]
        spectra.append(_draw_spectrum(i + 1, family, k, dim, rng))

    def evaluate(spectrum: _Spectrum) -> tuple[float, float, int, float] | None:
        beta = _solve_temperature(spectrum.weights, target_input, tolerance)
        if beta is None:
            return None
        p = _tempered(np.log(spectrum.weights), beta)
        matrix = (spectrum.basis * p) @ spectrum.basis.conj().T
        rho_b = FockDensityMatrix(0.5 * (matrix + matrix.conj().T), dim, label=spectrum.family)
        residual = abs(von_neumann_entropy_fock(rho_b).bits - target_input)
        if residual > tolerance:
            return None
        rho_c = attenuate(rho_b, 1.0 - eta)
        return von_neumann_entropy_fock(rho_c).bits, residual, spectrum.candidate_id, beta

    results = ordered_map(evaluate, spectra, threads)
    evaluated = [r for r in results if r is not None]
    skipped = len(results) - len(evaluated)
    if results[0] is None:
        raise TruncationError(f"thermal reference cannot meet the constraint at dim={dim}")
    logger.info("conjecture-2 search: %d evaluated, %d skipped", len(evaluated), skipped)

    target = EntropyValue(g_bits((1.0 - eta) * k))
    best_entropy, residual, best_id, beta = min(evaluated, key=lambda r: (r[0], r[2]))
    best = spectra[best_id]
    gap = best_entropy - target.bits
    if gap < -SEARCH_GAP_TOLERANCE:
        logger.warning(
            "candidate %d (%s) undercuts the thermal output entropy by %.3e bits",
            best_id,
            best.family,
            -gap,
        )
    return SearchReport(
        eta=eta,
        k=k,
        seed=seed,
        families=config.families,
        best_state={
            "family": best.family,
            "candidate_id": best.candidate_id,
            "rank": int(best.weights.size),
            "inverse_temperature": beta,
            **best.params,
        },
        best_entropy=EntropyValue(best_entropy),
        target_entropy=target,
        constraint_residual=residual,
        candidates_evaluated=len(evaluated),
        candidates_skipped=skipped,
        thermal_gap=results[0][0] - target.bits,
        dim=dim,
        n_modes=1,
        scope="single mode (conjecture 2); correlated multimode inputs are not covered",
    )


@dataclass(frozen=True)
class LocalCheckRow:
    family: str
    magnitude: float
    entropy_bits: float
    excess_bits: float


@dataclass(frozen=True)
class LocalCheckReport:
    """Output entropy for perturbations of the vacuum on port a, thermal on port b."""

    eta: float
    k: float
    dim: int
    seed: int
    baseline_bits: float
    vacuum_entropy_bits: float
    rows: tuple[LocalCheckRow, ...]
    tolerance: float = CONSTRAINT_TOLERANCE

    @property
    def min_excess(self) -> float:
        return min((row.entropy_bits - self.vacuum_entropy_bits for row in self.rows), default=0.0)

    @property
    def holds(self) -> bool:
        return bool(self.min_excess >= -self.tolerance)

    def to_dict(self) -> dict[str, Any]:
        return {
            "eta": self.eta,
            "k": self.k,
            "dim": self.dim,
            "seed": self.seed,
            "baseline_bits": self.baseline_bits,
            "vacuum_entropy_bits": self.vacuum_entropy_bits,
            "min_excess_bits": self.min_excess,
            "holds": self.holds,
            "rows": [
                {
                    "family": row.family,
                    "magnitude": row.magnitude,
                    "entropy_bits": row.entropy_bits,
                    "excess_bits": row.excess_bits,
                }
                for row in self.rows
            ],
        }


def _perturbed_vacuum(
    family: str, eps: float, dim: int, rng: np.random.Generator
) -> FockDensityMatrix:
    phase = rng.uniform(0.0, 2.0 * math.pi)
    if family == "coherent":
        return make_fock_coherent(eps * np.exp(1j * phase), dim)
    if family == "squeezed":
        return make_fock_squeezed(eps, phase, dim)
    if family == "fock_mixture":
        weight = min(eps, 1.0)
        return make_fock_diagonal([1.0 - weight, weight], dim)
    direction = np.zeros(dim, dtype=complex)
    direction[1:5] = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1.0
    psi = psi + eps * direction / np.linalg.norm(direction)
    psi /= np.linalg.norm(psi)
    return FockDensityMatrix(np.outer(psi, psi.conj()), dim, label="random_pure")


def conjecture1_local_check(
    eta: float,
    k: float,
    dim: int,
    perturbation_magnitudes: Sequence[float] = (0.05, 0.1, 0.2, 0.5),
    seed: int = 0,
    families: Sequence[str] = LOCAL_FAMILIES,
) -> LocalCheckReport:
    """Compare the c-mode entropy for vacuum on port a against nearby inputs.

    Port b is fixed to thermal(K). The single-photon input |1> is always
    included as an extra row.

    Args:
        eta: Transmissivity in (0, 1)
        k: Thermal photon number on port b
        dim: Fock truncation
        perturbation_magnitudes: Sizes of the perturbations of the vacuum
        seed: Seed for perturbation phases and directions
        families: Perturbation families

    Returns:
        Report with one row per (family, magnitude)
    """
    eta = _check_eta(eta, open_interval=True)
    if not math.isfinite(k) or k < 0:
        raise DomainError(f"k must be finite and >= 0, got {k}")
    unknown = set(families) - set(LOCAL_FAMILIES)
    if unknown:
        raise DomainError(f"unknown perturbation families {sorted(unknown)}")
    if any(not math.isfinite(m) or m < 0 for m in perturbation_magnitudes):
        raise DomainError("perturbation magnitudes must be finite and >= 0")

    rng = np.random.default_rng(seed)
    rho_b = make_fock_thermal(k, dim)
    vacuum_c, _ = propagate(make_fock_number(0, dim), rho_b, eta)
    vacuum_bits = von_neumann_entropy_fock(vacuum_c).bits
    baseline = g_bits((1.0 - eta) * k)

    inputs = [
        (family, float(eps), _perturbed_vacuum(family, eps, dim, rng))
        for eps in perturbation_magnitudes
        for family in families
    ]
    inputs.append(("fock", 1.0, make_fock_number(1, dim)))

    rows = []
    for family, eps, rho_a in inputs:
        rho_c, _ = propagate(rho_a, rho_b, eta)
        bits = von_neumann_entropy_fock(rho_c).bits
        rows.append(LocalCheckRow(family, eps, bits, bits - baseline))
    return LocalCheckReport(
        eta=eta,
        k=k,
        dim=dim,
        seed=seed,
        baseline_bits=baseline,
        vacuum_entropy_bits=vacuum_bits,
        rows=tuple(rows),
    )
