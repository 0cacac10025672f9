"""Gaussian states in the annihilation-operator correlation-matrix picture.

An n-mode state is described by its displacement ``mean`` (<a>) and the
2n x 2n correlation matrix

    R = < v v^dagger >,   v = [a_1..a_n, a_1^dagger..a_n^dagger]^T

of the fluctuation operators, i.e.

    R = [[N^T + I, M], [M^*, N]],  N_ij = <a_i^dagger a_j>, M_ij = <a_i a_j>.

Symplectic maps act as R -> S R S^dagger with S^dagger Q S = Q,
Q = diag(I, -I). Quadratures are q = Re(a), p = Im(a), so the vacuum has
quadrature variance 1/4.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.linalg import block_diag, eigh, schur

from bosoncast.entropy_core import (
    Base,
    EntropyValue,
    g_array,
    g_bits,
    g_inv,
    g_prime,
)
from bosoncast.errors import DomainError, InvalidStateError
from bosoncast.reports import SearchReport
from bosoncast.utils import ordered_map

logger = logging.getLogger(__name__)

STATE_TOLERANCE = 1e-9
PURE_TOLERANCE = 1e-9

GAUSSIAN_FAMILIES = ("squeezed_thermal", "symplectic", "lambda_split")


def _check_modes(n: int) -> int:
    if int(n) != n or n < 1:
        raise DomainError(f"number of modes must be a positive integer, got {n}")
    return int(n)


def q_matrix(n: int) -> np.ndarray:
    """Commutator matrix diag(I, -I) of v = [a, a^dagger]."""
    return np.diag(np.concatenate([np.ones(n), -np.ones(n)])).astype(complex)


def omega(n: int) -> np.ndarray:
    """Symplectic form [[0, I], [-I, 0]] in (q_1..q_n, p_1..p_n) ordering."""
    eye, zero = np.eye(n), np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def _u(n: int) -> np.ndarray:
    """Maps quadratures to ladder operators: v = U x."""
    eye = np.eye(n)
    return np.block([[eye, 1j * eye], [eye, -1j * eye]])


def _w(n: int) -> np.ndarray:
    """Inverse of U: x = W v."""
    eye = np.eye(n)
    return 0.5 * np.block([[eye, eye], [-1j * eye, 1j * eye]])


@dataclass(frozen=True, eq=False)
class GaussianState:
    """An n-mode Gaussian state: displacement plus correlation matrix."""

    n_modes: int
    mean: np.ndarray
    corr: np.ndarray

    def __post_init__(self) -> None:
        n = _check_modes(self.n_modes)
        mean = np.array(self.mean, dtype=complex).reshape(-1)
        corr = np.array(self.corr, dtype=complex)
        if mean.shape != (n,):
            raise InvalidStateError(f"mean must have {n} entries, got {mean.shape}")
        if corr.shape != (2 * n, 2 * n):
            raise InvalidStateError(f"corr must be {2 * n}x{2 * n}, got {corr.shape}")
        if not np.all(np.isfinite(corr)) or not np.all(np.isfinite(mean)):
            raise InvalidStateError("state contains non-finite entries")

        tol = STATE_TOLERANCE * max(1.0, float(np.abs(corr).max()))
        if np.abs(corr - corr.conj().T).max() > tol:
            raise InvalidStateError("correlation matrix is not Hermitian")
        upper, pairing = corr[:n, :n], corr[:n, n:]
        if np.abs(upper - np.eye(n) - corr[n:, n:].T).max() > tol:
            raise InvalidStateError("diagonal blocks violate <a a^dagger> = <a^dagger a>^T + I")
        if np.abs(pairing - pairing.T).max() > tol:
            raise InvalidStateError("pairing block <a a^T> is not symmetric")
        if np.abs(corr[n:, :n] - pairing.conj()).max() > tol:
            raise InvalidStateError("off-diagonal blocks are not mutual conjugates")

        for arr in (mean, corr):
            arr.flags.writeable = False
        object.__setattr__(self, "n_modes", n)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "corr", corr)

    @classmethod
    def from_moments(
        cls,
        number: np.ndarray,
        pairing: np.ndarray | None = None,
        mean: np.ndarray | Sequence[complex] | None = None,
    ) -> "GaussianState":
        """Build from N = <a^dagger a^T>, M = <a a^T> and the displacement."""
        number = np.atleast_2d(np.asarray(number, dtype=complex))
        n = number.shape[0]
        pairing = np.zeros((n, n), dtype=complex) if pairing is None else np.asarray(pairing)
        mean = np.zeros(n, dtype=complex) if mean is None else np.asarray(mean)
        corr = np.block([[number.T + np.eye(n), pairing], [pairing.conj(), number]])
        return cls(n, mean, corr)

    @property
    def number_matrix(self) -> np.ndarray:
        n = self.n_modes
        return self.corr[n:, n:]

    @property
    def pairing_matrix(self) -> np.ndarray:
        n = self.n_modes
        return self.corr[:n, n:]

    def photon_numbers(self) -> np.ndarray:
        """Mean photon number <a_i^dagger a_i> of every mode, displacement included."""
        return np.real(np.diag(self.number_matrix)) + np.abs(self.mean) ** 2

    def quadrature_covariance(self) -> np.ndarray:
        """Symmetrised real covariance of (q, p); the vacuum gives I/4."""
        w = _w(self.n_modes)
        return np.real(w @ self.corr @ w.conj().T)

    def reduced(self, modes: Sequence[int]) -> "GaussianState":
        """Reduced state of the listed modes."""
        modes = list(modes)
        if not modes or any(not 0 <= m < self.n_modes for m in modes):
            raise DomainError(f"invalid mode selection {modes} for {self.n_modes} modes")
        idx = modes + [m + self.n_modes for m in modes]
        return GaussianState(len(modes), self.mean[modes], self.corr[np.ix_(idx, idx)])

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_modes": self.n_modes,
            "mean": [[float(z.real), float(z.imag)] for z in self.mean],
            "corr": [[float(z.real), float(z.imag)] for z in self.corr.reshape(-1)],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GaussianState":
        try:
            n = int(data["n_modes"])
            mean = np.array([complex(re, im) for re, im in data["mean"]])
            corr = np.array([complex(re, im) for re, im in data["corr"]])
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidStateError(f"malformed Gaussian state document: {e}") from e
        if corr.size != 4 * n * n:
            raise InvalidStateError(f"corr needs {4 * n * n} entries, got {corr.size}")
        return cls(n, mean, corr.reshape(2 * n, 2 * n))


@dataclass(frozen=True, eq=False)
class SymplecticDecomposition:
    """R = S Lambda S^dagger with Lambda = diag(lambda + 1, lambda)."""

    s: np.ndarray
    lambdas: np.ndarray

    @property
    def n_modes(self) -> int:
        return len(self.lambdas)

    @property
    def lambda_matrix(self) -> np.ndarray:
        return np.diag(np.concatenate([self.lambdas + 1.0, self.lambdas])).astype(complex)

    def reconstruction_residual(self, state: GaussianState) -> float:
        """Frobenius norm of R - S Lambda S^dagger."""
        rebuilt = self.s @ self.lambda_matrix @ self.s.conj().T
        return float(np.linalg.norm(state.corr - rebuilt))

    def symplectic_residual(self) -> float:
        """Largest Frobenius deviation of S^dagger Q S and S Q S^dagger from Q."""
        q = q_matrix(self.n_modes)
        return float(
            max(
                np.linalg.norm(self.s.conj().T @ q @ self.s - q),
                np.linalg.norm(self.s @ q @ self.s.conj().T - q),
            )
        )

    def to_dict(self, state: GaussianState | None = None) -> dict[str, Any]:
        data: dict[str, Any] = {
            "lambdas": [float(v) for v in self.lambdas],
            "s": [[float(z.real), float(z.imag)] for z in self.s.reshape(-1)],
            "symplectic_residual": self.symplectic_residual(),
        }
        if state is not None:
            data["reconstruction_residual"] = self.reconstruction_residual(state)
        return data


def make_vacuum(n: int = 1) -> GaussianState:
    """n-mode vacuum."""
    n = _check_modes(n)
    return GaussianState.from_moments(np.zeros((n, n)))


def make_thermal(n: int, k_per_mode: float | Sequence[float]) -> GaussianState:
    """Product of thermal states with mean photon numbers ``k_per_mode``."""
    n = _check_modes(n)
    ks = np.broadcast_to(np.asarray(k_per_mode, dtype=float), (n,))
    if not np.all(np.isfinite(ks)) or np.any(ks < 0):
        raise DomainError(f"thermal photon numbers must be finite and >= 0, got {ks}")
    return GaussianState.from_moments(np.diag(ks))


def make_coherent(alpha: complex | Sequence[complex]) -> GaussianState:
    """Coherent state(s) with the given amplitudes."""
    alphas = np.atleast_1d(np.asarray(alpha, dtype=complex))
    n = len(alphas)
    return GaussianState.from_moments(np.zeros((n, n)), mean=alphas)


def squeezing_symplectic(r: float, phase: float = 0.0) -> np.ndarray:
    """Single-mode squeezer a -> a cosh r - a^dagger e^{i phase} sinh r."""
    if not math.isfinite(r) or not math.isfinite(phase):
        raise DomainError(f"squeezing parameters must be finite, got r={r} phase={phase}")
    ch, sh = math.cosh(r), math.sinh(r)
    e = complex(math.cos(phase), math.sin(phase))
    return np.array([[ch, -e * sh], [-e.conjugate() * sh, ch]], dtype=complex)


def make_squeezed_vacuum(r: float, phase: float = 0.0) -> GaussianState:
    """Single-mode squeezed vacuum: <a^dagger a> = sinh^2 r, <a a> = -e^{i phase} sinh r cosh r."""
    return apply_symplectic(squeezing_symplectic(r, phase), make_vacuum(1))


def make_squeezed_thermal(k: float, r: float, phase: float = 0.0) -> GaussianState:
    """Squeezed thermal state; its symplectic eigenvalue, hence entropy, stays at k."""
    return apply_symplectic(squeezing_symplectic(r, phase), make_thermal(1, k))


def tensor(states: Sequence[GaussianState]) -> GaussianState:
    """Product state of independent Gaussian states, modes in argument order."""
    if not states:
        raise DomainError("tensor needs at least one state")
    number = block_diag(*(s.number_matrix for s in states))
    pairing = block_diag(*(s.pairing_matrix for s in states))
    mean = np.concatenate([s.mean for s in states])
    return GaussianState.from_moments(number, pairing, mean)


def apply_symplectic(s: np.ndarray, state: GaussianState) -> GaussianState:
    """Transform v -> S v: R -> S R S^dagger, displacement likewise."""
    n = state.n_modes
    s = np.asarray(s, dtype=complex)
    if s.shape != (2 * n, 2 * n):
        raise DomainError(f"symplectic matrix must be {2 * n}x{2 * n}, got {s.shape}")
    corr = s @ state.corr @ s.conj().T
    corr = 0.5 * (corr + corr.conj().T)
    mean = (s @ np.concatenate([state.mean, state.mean.conj()]))[:n]
    return GaussianState(n, mean, corr)


def _haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_symplectic(
    n: int, rng: np.random.Generator, max_squeeze: float = 1.0
) -> np.ndarray:
    """Random complex symplectic matrix U1 (cosh r, sinh r) U2 in Bloch-Messiah form.

    Args:
        n: Number of modes
        rng: Random generator
        max_squeeze: Squeezing parameters are drawn uniformly from [0, max_squeeze]

    Returns:
        2n x 2n matrix S with S^dagger Q S = Q
    """
    n = _check_modes(n)
    u1, u2 = _haar_unitary(n, rng), _haar_unitary(n, rng)
    r = rng.uniform(0.0, max_squeeze, n)
    a = u1 @ np.diag(np.cosh(r)) @ u2
    b = -u1 @ np.diag(np.sinh(r)) @ u2.conj()
    return np.block([[a, b], [b.conj(), a.conj()]])


def random_state(
    n: int, rng: np.random.Generator, max_lambda: float = 3.0, max_squeeze: float = 0.5
) -> GaussianState:
    """Random valid zero-mean state S diag(lambda+1, lambda) S^dagger."""
    lambdas = rng.uniform(0.0, max_lambda, _check_modes(n))
    return apply_symplectic(random_symplectic(n, rng, max_squeeze), make_thermal(n, lambdas))


def _clip_lambdas(nu: np.ndarray, floor: float = 0.0) -> np.ndarray:
    lambdas = (nu - 1.0) / 2.0
    if np.any(lambdas < -STATE_TOLERANCE):
        raise InvalidStateError(
            f"symplectic eigenvalues {lambdas} violate the uncertainty principle"
        )
    return np.where(lambdas < floor, 0.0, lambdas)


def symplectic_eigenvalues(state: GaussianState) -> np.ndarray:
    """Symplectic eigenvalues lambda_i (thermal photon numbers), descending.

    Computed from the moduli of the eigenvalues of i Omega V, which come in
    +/- pairs; V is scaled so that the vacuum has V = I.
    """
    v = 4.0 * state.quadrature_covariance()
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * omega(state.n_modes) @ v)))
    return np.sort(_clip_lambdas(moduli[::2], PURE_TOLERANCE))[::-1]


def williamson(state: GaussianState) -> SymplecticDecomposition:
    """Williamson decomposition R = S Lambda S^dagger, lambdas descending.

    The real covariance V (vacuum = I) is decomposed as V = M D M^T with M
    real symplectic through the real Schur form of V^{-1/2} Omega V^{-1/2};
    S = U M W carries M back to the ladder-operator picture. Within a
    degenerate eigenvalue the choice of S is arbitrary.

    Args:
        state: Gaussian state; only its correlation matrix matters

    Returns:
        Decomposition with S symplectic and lambda_i >= 0
    """
    n = state.n_modes
    v = 4.0 * state.quadrature_covariance()
    evals, evecs = eigh(v)
    if evals.min() <= 0:
        raise InvalidStateError("quadrature covariance is not positive definite")
    v_half = evecs @ np.diag(np.sqrt(evals)) @ evecs.T
    v_mhalf = evecs @ np.diag(1.0 / np.sqrt(evals)) @ evecs.T

    t, k = schur(v_mhalf @ omega(n) @ v_mhalf, output="real")
    # orient every 2x2 block as [[0, a], [-a, 0]] with a > 0
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    p = block_diag(*(np.eye(2) if t[2 * i, 2 * i + 1] > 0 else swap for i in range(n)))
    k, t = k @ p, p @ t @ p
    # Schur pairs are (x1, p1, x2, p2, ...); move to (x1..xn, p1..pn)
    to_xxpp = np.zeros((2 * n, 2 * n))
    for i in range(n):
        to_xxpp[2 * i, i] = 1.0
        to_xxpp[2 * i + 1, n + i] = 1.0
    k = k @ to_xxpp
    nu = np.array([1.0 / t[2 * i, 2 * i + 1] for i in range(n)])

    m = v_half @ k @ np.diag(1.0 / np.sqrt(np.concatenate([nu, nu])))
    order = np.argsort(-nu, kind="stable")
    m = m[:, np.concatenate([order, order + n])]
    lambdas = _clip_lambdas(nu[order])

    s = _u(n) @ m @ _w(n)
    return SymplecticDecomposition(s=s, lambdas=lambdas)


def von_neumann_entropy(state: GaussianState, base: Base | str = Base.BITS) -> EntropyValue:
    """Sum of g over the symplectic eigenvalues; independent of the displacement."""
    nats = float(np.sum(g_array(symplectic_eigenvalues(state), Base.NATS)))
    return EntropyValue.from_nats(nats, base)


def beam_splitter(
    state_a: GaussianState, state_b: GaussianState, eta: float
) -> tuple[GaussianState, GaussianState, GaussianState]:
    """Mix independent inputs: c = sqrt(eta) a + sqrt(1-eta) b, d = sqrt(1-eta) a - sqrt(eta) b.

    Args:
        state_a: n-mode input on port a
        state_b: n-mode input on port b
        eta: Transmissivity in [0, 1]

    Returns:
        (joint output over (c, d), reduced c, reduced d)
    """
    if state_a.n_modes != state_b.n_modes:
        raise DomainError(
            f"beam splitter inputs need equal mode counts, got "
            f"{state_a.n_modes} and {state_b.n_modes}"
        )
    if not math.isfinite(eta) or not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta}")

    n = state_a.n_modes
    joint_in = tensor([state_a, state_b])
    t, r = math.sqrt(eta), math.sqrt(1.0 - eta)
    eye = np.eye(n)
    mix = np.block([[t * eye, r * eye], [r * eye, -t * eye]])
    lin = block_diag(mix, mix)
    corr = lin @ joint_in.corr @ lin.T
    joint = GaussianState(2 * n, mix @ joint_in.mean, 0.5 * (corr + corr.conj().T))
    return joint, joint.reduced(range(n)), joint.reduced(range(n, 2 * n))


def lagrange_multipliers(lambdas: Sequence[float], eta: float) -> np.ndarray:
    """Multiplier xi_i = (1-eta) g'((1-eta) lambda_i) / g'(lambda_i) for each mode.

    Stationarity of the output entropy sum g((1-eta) lambda_i) under the
    constraint sum g(lambda_i) = n g(K) requires every xi_i to be equal.
    """
    scale = 1.0 - eta
    return np.array(
        [scale * g_prime(scale * lam) / g_prime(lam) for lam in np.asarray(lambdas, float)]
    )


def lagrange_residual(lambdas: Sequence[float], eta: float) -> float:
    """Spread max(xi) - min(xi) of the multipliers; zero at a stationary point."""
    xi = lagrange_multipliers(lambdas, eta)
    return float(xi.max() - xi.min())


def wehrl_entropy_gaussian_thermal(n: int, k: float) -> EntropyValue:
    """Wehrl entropy n (1 + ln(K+1)) of an n-mode thermal product, in nats."""
    n = _check_modes(n)
    if not math.isfinite(k) or k < 0:
        raise DomainError(f"thermal photon number must be finite and >= 0, got {k}")
    return EntropyValue(n * (1.0 + math.log1p(k)), Base.NATS)


def min_wehrl_output_entropy(n: int, k: float, eta: float) -> EntropyValue:
    """Minimum Wehrl entropy n (1 + ln(K(1-eta) + 1)) of the c modes, in nats."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta}")
    return wehrl_entropy_gaussian_thermal(n, (1.0 - eta) * k)


def wehrl_entropy_gaussian(state: GaussianState) -> EntropyValue:
    """Wehrl entropy -int Q ln(pi^n Q) of any Gaussian state, in nats.

    The Husimi function is Gaussian with covariance V + I/4, so the integral
    is a differential entropy in closed form.
    """
    n = state.n_modes
    sigma = state.quadrature_covariance() + 0.25 * np.eye(2 * n)
    _, logdet = np.linalg.slogdet(2.0 * math.pi * math.e * sigma)
    return EntropyValue(max(0.0, 0.5 * logdet - n * math.log(math.pi)), Base.NATS)


@dataclass(frozen=True)
class GaussianSearchConfig:
    """Knobs of the Gaussian output-entropy search."""

    budget: int = 200
    seed: int = 0
    families: tuple[str, ...] = GAUSSIAN_FAMILIES
    max_squeeze: float = 1.5
    max_lambda: float | None = None
    tolerance: float = 1e-9
    threads: int = 1

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise DomainError(f"budget must be >= 1, got {self.budget}")
        unknown = set(self.families) - set(GAUSSIAN_FAMILIES)
        if unknown or not self.families:
            raise DomainError(
                f"families must be a non-empty subset of {GAUSSIAN_FAMILIES}, got {self.families}"
            )


@dataclass(frozen=True)
class _Candidate:
    candidate_id: int
    family: str
    state: GaussianState
    params: dict[str, Any] = field(default_factory=dict)


def _draw_candidate(
    candidate_id: int,
    family: str,
    n: int,
    k: float,
    config: GaussianSearchConfig,
    rng: np.random.Generator,
) -> _Candidate | None:
    if family == "squeezed_thermal":
        rs = rng.uniform(0.0, config.max_squeeze, n)
        phases = rng.uniform(0.0, 2.0 * math.pi, n)
        state = tensor([make_squeezed_thermal(k, r, ph) for r, ph in zip(rs, phases, strict=True)])
        return _Candidate(candidate_id, family, state, {"squeezing": rs.tolist()})
    if family == "symplectic":
        s = random_symplectic(n, rng, config.max_squeeze)
        return _Candidate(candidate_id, family, apply_symplectic(s, make_thermal(n, k)))

    # lambda_split: first n-1 eigenvalues free, the last one fixed by the constraint
    max_lambda = config.max_lambda if config.max_lambda is not None else 4.0 * k + 1.0
    free = rng.uniform(0.0, max_lambda, n - 1)
    remainder = n * g_bits(k) - float(np.sum(g_array(free)))
    if remainder < 0:
        return None
    lambdas = np.append(free, g_inv(remainder))
    return _Candidate(
        candidate_id, family, make_thermal(n, lambdas), {"lambdas": lambdas.tolist()}
    )


def min_output_entropy_gaussian(
    eta: float, k: float, n: int, search_config: GaussianSearchConfig | None = None
) -> SearchReport:
    """Search Gaussian b-mode inputs of entropy n g(K) for the smallest c-mode entropy.

    Port a holds the vacuum. Candidates come from squeezed-thermal products,
    random symplectic conjugations of the thermal product and uneven splits
    of the symplectic eigenvalues on the constraint surface; the thermal
    product itself is always candidate 0.

    Args:
        eta: Transmissivity in (0, 1)
        k: Thermal photon number fixing the input entropy n g(K)
        n: Number of modes
        search_config: Budget, seed, families and tolerances

    Returns:
        Report with the best candidate and its gap to n g((1-eta) K)
    """
    config = search_config or GaussianSearchConfig()
    n = _check_modes(n)
    if not math.isfinite(eta) or not 0.0 < eta < 1.0:
        raise DomainError(f"eta must lie in (0, 1), got {eta}")
    if not math.isfinite(k) or k < 0:
        raise DomainError(f"k must be finite and >= 0, got {k}")

    scope = "Gaussian inputs, n modes, total entropy constraint"
    target = EntropyValue(n * g_bits((1.0 - eta) * k))
    if k == 0:
        return SearchReport(
            eta=eta,
            k=k,
            seed=config.seed,
            families=config.families,
            best_state={"family": "vacuum", "candidate_id": 0},
            best_entropy=EntropyValue(0.0),
            target_entropy=target,
            constraint_residual=0.0,
            candidates_evaluated=1,
            n_modes=n,
            scope=scope,
        )

    rng = np.random.default_rng(config.seed)
    candidates = [_Candidate(0, "thermal", make_thermal(n, k))]
    skipped = 0
    for i in range(config.budget):
        family = config.families[i % len(config.families)]
        candidate = _draw_candidate(i + 1, family, n, k, config, rng)
        if candidate is None:
            skipped += 1
        else:
            candidates.append(candidate)

    vacuum = make_vacuum(n)
    constraint = n * g_bits(k)

    def evaluate(candidate: _Candidate) -> tuple[float, float, int]:
        residual = abs(von_neumann_entropy(candidate.state).bits - constraint)
        _, out_c, _ = beam_splitter(vacuum, candidate.state, eta)
        return von_neumann_entropy(out_c).bits, residual, candidate.candidate_id

    results = ordered_map(evaluate, candidates, config.threads)
    feasible = [r for r in results if r[1] <= config.tolerance]
    skipped += len(results) - len(feasible)
    if len(feasible) < len(results):
        logger.warning("%d candidates missed the entropy constraint", len(results) - len(feasible))

    best_entropy, best_residual, best_id = min(feasible, key=lambda r: (r[0], r[2]))
    best = next(c for c in candidates if c.candidate_id == best_id)
    logger.info("Gaussian search: %d candidates, best %s", len(feasible), best.family)

    return SearchReport(
        eta=eta,
        k=k,
        seed=config.seed,
        families=config.families,
        best_state={
            "family": best.family,
            "candidate_id": best.candidate_id,
            "lambdas": symplectic_eigenvalues(best.state).tolist(),
            "photon_numbers": best.state.photon_numbers().tolist(),
            **best.params,
        },
        best_entropy=EntropyValue(best_entropy),
        target_entropy=target,
        constraint_residual=best_residual,
        candidates_evaluated=len(feasible),
        candidates_skipped=skipped,
        thermal_gap=results[0][0] - target.bits,
        n_modes=n,
        scope=scope,
    )

