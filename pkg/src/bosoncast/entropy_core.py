"""The Bose-Einstein entropy function g(x) and its inverse.

g(x) = (x+1) log(x+1) - x log(x) is the von Neumann entropy of a thermal
state with mean photon number x. Every capacity formula and every entropy
conjecture in this package is phrased through it.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from bosoncast.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

# Below this g(x) is treated as exactly zero; x*log1p(1/x) would overflow.
G_ZERO_THRESHOLD = 1e-300
G_INV_TOLERANCE = 1e-12
SCALING_TOLERANCE = 1e-12

LN2 = math.log(2.0)


class Base(str, Enum):
    """Logarithm base of an entropy."""

    BITS = "bits"
    NATS = "nats"

    @property
    def factor(self) -> float:
        """Multiplier converting a value in nats into this base."""
        return 1.0 / LN2 if self is Base.BITS else 1.0


@dataclass(frozen=True)
class EntropyValue:
    """A non-negative entropy tagged with its base."""

    value: float
    base: Base = Base.BITS

    def __post_init__(self) -> None:
        if not math.isfinite(self.value) or self.value < 0:
            raise DomainError(f"Entropy must be finite and >= 0, got {self.value}")
        object.__setattr__(self, "base", Base(self.base))

    @classmethod
    def from_nats(cls, nats: float, base: Base | str = Base.BITS) -> "EntropyValue":
        """Build from a value in nats, clamping roundoff-level negatives to zero."""
        base = Base(base)
        return cls(max(0.0, nats) * base.factor, base)

    @property
    def nats(self) -> float:
        return self.value * LN2 if self.base is Base.BITS else self.value

    @property
    def bits(self) -> float:
        return self.value / LN2 if self.base is Base.NATS else self.value

    def to(self, base: Base | str) -> "EntropyValue":
        """Convert to another base."""
        base = Base(base)
        if base is self.base:
            return self
        return EntropyValue(self.bits if base is Base.BITS else self.nats, base)

    def __float__(self) -> float:
        return self.value


def _check_photon_number(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise DomainError(f"Mean photon number must be finite and >= 0, got {x}")
    return x


def _g_nats(x: float) -> float:
    if x < G_ZERO_THRESHOLD:
        return 0.0
    # log1p form avoids the cancellation of (x+1)log(x+1) - x log x at large x
    return math.log1p(x) + x * math.log1p(1.0 / x)


def g(x: float, base: Base | str = Base.BITS) -> EntropyValue:
    """Entropy of a thermal state with mean photon number ``x``.

    Args:
        x: Mean photon number, finite and non-negative
        base: Output base, bits by default

    Returns:
        g(x) in the requested base
    """
    return EntropyValue.from_nats(_g_nats(_check_photon_number(x)), base)


def g_bits(x: float) -> float:
    """Shorthand for ``g(x).value`` in bits."""
    return _g_nats(_check_photon_number(x)) / LN2


def g_array(xs: np.ndarray | Sequence[float], base: Base | str = Base.BITS) -> np.ndarray:
    """Vectorised g over an array of mean photon numbers."""
    xs = np.asarray(xs, dtype=float)
    if not np.all(np.isfinite(xs)) or np.any(xs < 0):
        raise DomainError("Mean photon numbers must be finite and >= 0")
    out = np.zeros_like(xs)
    mask = xs >= G_ZERO_THRESHOLD
    xm = xs[mask]
    out[mask] = np.log1p(xm) + xm * np.log1p(1.0 / xm)
    return out * Base(base).factor


def g_prime(x: float, base: Base | str = Base.BITS) -> float:
    """Derivative g'(x) = log((x+1)/x), defined for x > 0."""
    x = _check_photon_number(x)
    if x == 0:
        raise DomainError("g'(x) diverges at x = 0")
    return math.log1p(1.0 / x) * Base(base).factor


def g_inv(y: EntropyValue | float, base: Base | str = Base.BITS) -> float:
    """Mean photon number whose thermal entropy equals ``y``.

    A bracket [0, 2**y] always contains the root because g(x) > log2(x+1).
    brentq narrows it and a few Newton steps with the analytic derivative
    polish the result to the absolute tolerance in bits.

    Args:
        y: Entropy; a bare float is read in ``base``
        base: Base of a bare float argument

    Returns:
        x >= 0 with |g(x) - y| <= 1e-12 bits
    """
    y_bits = y.bits if isinstance(y, EntropyValue) else float(y) / (LN2 * Base(base).factor)
    if not math.isfinite(y_bits) or y_bits < 0:
        raise DomainError(f"Entropy must be finite and >= 0, got {y_bits} bits")
    if y_bits == 0:
        return 0.0

    hi = 2.0 ** min(y_bits, 1000.0)
    if g_bits(hi) < y_bits:
        raise ConvergenceError(f"Entropy {y_bits} bits is beyond the invertible range")

    x = brentq(lambda t: g_bits(t) - y_bits, 0.0, hi, xtol=1e-300, maxiter=500)
    for _ in range(8):
        if x <= 0:
            break
        step = (g_bits(x) - y_bits) / g_prime(x)
        x = max(x - step, 0.0)
        if abs(step) <= 4e-16 * x:
            break

    residual = abs(g_bits(x) - y_bits)
    if residual > G_INV_TOLERANCE:
        raise ConvergenceError(f"g_inv({y_bits}) stalled with residual {residual:.3e}")
    return x


@dataclass(frozen=True)
class ScalingReport:
    """Outcome of one g-scaling inequality evaluation."""

    x0: float
    lhs: float
    rhs: float
    holds: bool

    def to_dict(self) -> dict[str, float | bool]:
        return {"x0": self.x0, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


def g_scaling_inequality_check(xs: Sequence[float], eta: float) -> ScalingReport:
    """Check mean(g(eta*x_k)) >= g(eta*x0) where g(x0) = mean(g(x_k)).

    The converse of the broadcast capacity theorem relies on this inequality;
    it follows from the concavity of g(eta * g_inv(y)) in y.

    Args:
        xs: Non-empty list of mean photon numbers
        eta: Scale factor in [0, 1]

    Returns:
        Both sides (bits) and whether the inequality holds within 1e-12
    """
    xs = [_check_photon_number(x) for x in xs]
    if not xs:
        raise DomainError("The photon-number list must be non-empty")
    eta = float(eta)
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta}")

    x0 = g_inv(math.fsum(g_bits(x) for x in xs) / len(xs))
    lhs = math.fsum(g_bits(eta * x) for x in xs) / len(xs)
    rhs = g_bits(eta * x0)
    holds = bool(lhs >= rhs - SCALING_TOLERANCE)
    if not holds:
        logger.warning("g-scaling inequality violated: lhs=%r rhs=%r", lhs, rhs)
    return ScalingReport(x0=x0, lhs=lhs, rhs=rhs, holds=holds)
