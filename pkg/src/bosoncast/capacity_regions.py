"""Capacity-region boundaries of the single-mode bosonic broadcast channel.

Alice drives one input of a beam splitter of transmissivity eta; Bob receives
the transmitted arm and Charlie the reflected one. For eta > 1/2 the channel
is degraded (Charlie's state is Bob's sent through a further beam splitter of
transmissivity (1-eta)/eta) and each boundary below is traced by the power
split beta between Bob's and Charlie's messages.

The coherent-state multiple-access (MAC) envelope is reconstructed from the
Holevo-bound region of the dual two-transmitter configuration.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from bosoncast.entropy_core import g_bits
from bosoncast.errors import DomainError, GridError, UnsupportedRegimeError
from bosoncast.utils import render_csv

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 257
MIN_DENSE_POINTS = 64
DOMINANCE_TOLERANCE = 1e-12
CSV_HEADER = ("beta", "r_b_bits", "r_c_bits")


class Scheme(str, Enum):
    """Receiver family a boundary belongs to."""

    OPTIMUM = "optimum"
    HOMODYNE = "homodyne"
    HETERODYNE = "heterodyne"
    MAC_ENVELOPE = "mac_envelope"


@dataclass(frozen=True)
class ChannelParams:
    """Beam-splitter transmissivity and mean input photon budget.

    ``eta_c`` is the coupling from Alice to Charlie. It defaults to the
    lossless value ``1 - eta``; a smaller value models a lossy coupler.
    """

    eta: float
    nbar: float
    eta_c: float | None = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.eta) or not 0.0 < self.eta < 1.0:
            raise DomainError(f"eta must lie in (0, 1), got {self.eta}")
        if not math.isfinite(self.nbar) or self.nbar < 0:
            raise DomainError(f"nbar must be finite and >= 0, got {self.nbar}")
        if self.eta_c is not None:
            if not math.isfinite(self.eta_c) or self.eta_c < 0:
                raise DomainError(f"eta_c must be finite and >= 0, got {self.eta_c}")
            if self.eta + self.eta_c > 1.0 + 1e-15:
                raise DomainError(
                    f"eta + eta_c must not exceed 1, got {self.eta + self.eta_c}"
                )

    @property
    def charlie_gain(self) -> float:
        return 1.0 - self.eta if self.eta_c is None else self.eta_c

    def require_degraded(self) -> None:
        """Raise unless Charlie's arm is a degraded copy of Bob's."""
        if self.eta_c is None and self.eta <= 0.5:
            raise UnsupportedRegimeError(
                f"degraded broadcast regime requires eta > 1/2, got eta={self.eta}"
            )
        if self.eta_c is not None and not self.eta_c < self.eta:
            raise UnsupportedRegimeError(
                f"degraded broadcast regime requires eta_c < eta, got "
                f"eta={self.eta} eta_c={self.eta_c}"
            )

    def to_dict(self) -> dict[str, float]:
        data = {"eta": self.eta, "nbar": self.nbar}
        if self.eta_c is not None:
            data["eta_c"] = self.eta_c
        return data


@dataclass(frozen=True)
class RatePair:
    """Rates to Bob and Charlie, in bits per channel use, at power split beta."""

    r_b: float
    r_c: float
    beta: float

    def __post_init__(self) -> None:
        if self.r_b < 0 or self.r_c < 0:
            raise DomainError(f"rates must be >= 0, got ({self.r_b}, {self.r_c})")
        if not 0.0 <= self.beta <= 1.0:
            raise DomainError(f"beta must lie in [0, 1], got {self.beta}")


@dataclass(frozen=True)
class RegionCurve:
    """Sampled outer boundary of a two-user rate region."""

    points: tuple[RatePair, ...]
    scheme: Scheme
    params: ChannelParams
    extra: dict[str, float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def r_b(self) -> np.ndarray:
        return np.array([p.r_b for p in self.points])

    @property
    def r_c(self) -> np.ndarray:
        return np.array([p.r_c for p in self.points])

    @property
    def betas(self) -> np.ndarray:
        return np.array([p.beta for p in self.points])

    def metadata(self) -> dict[str, float | str]:
        return {"scheme": self.scheme.value, **self.params.to_dict(), **self.extra}

    def to_csv(self, config: dict | None = None) -> str:
        """Render as CSV: metadata comment, optional config comment, header, rows."""
        text = render_csv(
            CSV_HEADER,
            ((p.beta, p.r_b, p.r_c) for p in self.points),
            comments=self.metadata(),
        )
        if config:
            text = render_csv((), (), comments=config).rstrip("\n") + "\n" + text
        return text


def beta_grid(points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """Uniform power-split grid on [0, 1]."""
    if points < 2:
        raise DomainError(f"a beta grid needs at least 2 points, got {points}")
    return np.linspace(0.0, 1.0, points)


def _check_grid(grid: Sequence[float] | np.ndarray | None) -> np.ndarray:
    grid = beta_grid() if grid is None else np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("beta grid must be a non-empty 1-d sequence")
    if np.any(grid < 0) or np.any(grid > 1) or not np.all(np.isfinite(grid)):
        raise DomainError("beta grid values must lie in [0, 1]")
    return np.sort(grid)


def _clip(value: float) -> float:
    # differences of g can land at -1e-16 on the boundary
    return value if value > 0 else 0.0


def ultimate_boundary(
    params: ChannelParams, grid: Sequence[float] | np.ndarray | None = None
) -> RegionCurve:
    """Optimum-reception boundary: R_B = g(eta beta N), R_C = g(eta_c N) - g(eta_c beta N).

    Args:
        params: Channel parameters in the degraded regime
        grid: Power splits to sample, defaults to 257 uniform points

    Returns:
        Boundary curve in bits per channel use
    """
    params.require_degraded()
    eta_b, eta_c, nbar = params.eta, params.charlie_gain, params.nbar
    total_c = g_bits(eta_c * nbar)
    points = tuple(
        RatePair(
            r_b=g_bits(eta_b * beta * nbar),
            r_c=_clip(total_c - g_bits(eta_c * beta * nbar)),
            beta=float(beta),
        )
        for beta in _check_grid(grid)
    )
    return RegionCurve(points, Scheme.OPTIMUM, params)


def homodyne_boundary(
    params: ChannelParams, grid: Sequence[float] | np.ndarray | None = None
) -> RegionCurve:
    """Coherent states with homodyne receivers: a scalar Gaussian broadcast channel."""
    params.require_degraded()
    eta_b, eta_c, nbar = params.eta, params.charlie_gain, params.nbar
    points = []
    for beta in _check_grid(grid):
        r_b = 0.5 * math.log2(1.0 + 4.0 * eta_b * beta * nbar)
        r_c = 0.5 * math.log2(
            1.0 + 4.0 * eta_c * (1.0 - beta) * nbar / (1.0 + 4.0 * eta_c * beta * nbar)
        )
        points.append(RatePair(r_b=r_b, r_c=r_c, beta=float(beta)))
    return RegionCurve(tuple(points), Scheme.HOMODYNE, params)


def heterodyne_boundary(
    params: ChannelParams, grid: Sequence[float] | np.ndarray | None = None
) -> RegionCurve:
    """Coherent states with heterodyne receivers: a vector Gaussian broadcast channel."""
    params.require_degraded()
    eta_b, eta_c, nbar = params.eta, params.charlie_gain, params.nbar
    points = []
    for beta in _check_grid(grid):
        r_b = math.log2(1.0 + eta_b * beta * nbar)
        r_c = math.log2(1.0 + eta_c * (1.0 - beta) * nbar / (1.0 + eta_c * beta * nbar))
        points.append(RatePair(r_b=r_b, r_c=r_c, beta=float(beta)))
    return RegionCurve(tuple(points), Scheme.HETERODYNE, params)


BOUNDARIES = {
    Scheme.OPTIMUM: ultimate_boundary,
    Scheme.HOMODYNE: homodyne_boundary,
    Scheme.HETERODYNE: heterodyne_boundary,
}


def degraded_transmissivity(eta: float) -> float:
    """Transmissivity of the beam splitter that turns Bob's state into Charlie's."""
    ChannelParams(eta=eta, nbar=0.0).require_degraded()
    return (1.0 - eta) / eta


def mac_coherent_envelope(
    eta: float,
    nbar_a: float,
    nbar_b: float,
    grid: Sequence[float] | np.ndarray | None = None,
) -> RegionCurve:
    """Outer envelope of the coherent-state MAC regions on the same beam splitter.

    Transmitter A reaches the receiver through eta and transmitter B through
    1 - eta. For photon allocations (N_A, N_B) the Holevo region is

        R_A <= g(eta N_A), R_B <= g((1-eta) N_B),
        R_A + R_B <= g(eta N_A + (1-eta) N_B).

    Each constraint grows with the allocation, so over all allocations within
    the fixed per-user budgets the envelope is the region at full budgets. Its
    boundary is swept by the split s: R_A = s * g(eta nbar_a) and R_B is the
    largest rate the remaining constraints admit. Kinks of the boundary are
    inserted as extra samples so that linear interpolation is exact. R_A is
    reported in the r_b column and R_B in r_c, matching the broadcast labels.

    Args:
        eta: Beam-splitter transmissivity in (0, 1)
        nbar_a: Photon budget of transmitter A
        nbar_b: Photon budget of transmitter B
        grid: Sweep of the split s in [0, 1]

    Returns:
        Envelope curve, consecutive duplicate points removed
    """
    params = ChannelParams(eta=eta, nbar=nbar_a)
    if not math.isfinite(nbar_b) or nbar_b < 0:
        raise DomainError(f"nbar_b must be finite and >= 0, got {nbar_b}")

    cap_a = g_bits(eta * nbar_a)
    cap_b = g_bits((1.0 - eta) * nbar_b)
    cap_sum = g_bits(eta * nbar_a + (1.0 - eta) * nbar_b)

    splits = list(_check_grid(grid))
    if cap_a > 0:
        knee = (cap_sum - cap_b) / cap_a
        if 0.0 < knee < 1.0:
            splits.append(knee)
    splits.sort()

    points: list[RatePair] = []
    for s in splits:
        r_a = s * cap_a
        r_b = _clip(min(cap_b, cap_sum - r_a))
        points.append(RatePair(r_b=r_a, r_c=r_b, beta=float(s)))
    points.append(RatePair(r_b=cap_a, r_c=0.0, beta=1.0))

    deduped = [points[0]]
    for point in points[1:]:
        if (point.r_b, point.r_c) != (deduped[-1].r_b, deduped[-1].r_c):
            deduped.append(point)
    return RegionCurve(
        tuple(deduped), Scheme.MAC_ENVELOPE, params, extra={"nbar_b": float(nbar_b)}
    )


def _upper_staircase(curve: RegionCurve) -> tuple[np.ndarray, np.ndarray]:
    """Outer boundary as a non-increasing function r_c(r_b) on sorted unique r_b."""
    r_b, r_c = curve.r_b, curve.r_c
    order = np.argsort(r_b, kind="stable")
    r_b, r_c = r_b[order], r_c[order]
    xs, starts = np.unique(r_b, return_index=True)
    ys = np.maximum.reduceat(r_c, starts)
    # a point further right dominates everything to its left
    ys = np.maximum.accumulate(ys[::-1])[::-1]
    return xs, ys


def region_dominates(
    outer: RegionCurve, inner: RegionCurve, tolerance: float = DOMINANCE_TOLERANCE
) -> bool:
    """True iff every inner boundary point lies inside the outer region.

    The outer boundary is read as a monotone non-increasing function of r_b,
    linearly interpolated between samples.

    Args:
        outer: Candidate dominating curve
        inner: Curve that should lie inside
        tolerance: Absolute slack in bits

    Returns:
        Pareto-dominance verdict

    Raises:
        GridError: Either curve has fewer than MIN_DENSE_POINTS samples
    """
    if len(outer) == 0 or len(inner) == 0:
        raise DomainError("region_dominates needs two non-empty curves")
    for name, curve in (("outer", outer), ("inner", inner)):
        if len(curve) < MIN_DENSE_POINTS:
            raise GridError(
                f"{name} curve has {len(curve)} samples; dominance needs at least {MIN_DENSE_POINTS}"
            )

    logger.debug("dominance check: %d outer, %d inner samples", len(outer), len(inner))
    xs, ys = _upper_staircase(outer)
    for point in inner.points:
        if point.r_b > xs[-1] + tolerance:
            return False
        bound = float(np.interp(min(point.r_b, xs[-1]), xs, ys))
        if point.r_c > bound + tolerance:
            return False
    return True
