"""Search reports shared by the Gaussian and Fock-space entropy searches."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from bosoncast.entropy_core import EntropyValue
from bosoncast.utils import save_json


@dataclass(frozen=True)
class SearchReport:
    """Outcome of an output-entropy minimisation search.

    ``gap`` is ``best_entropy - target_entropy`` in bits; a clearly negative
    gap would be a counterexample to the minimum output entropy conjecture
    under test.
    """

    eta: float
    k: float
    seed: int
    families: tuple[str, ...]
    best_state: dict[str, Any]
    best_entropy: EntropyValue
    target_entropy: EntropyValue
    constraint_residual: float
    candidates_evaluated: int
    candidates_skipped: int = 0
    thermal_gap: float = 0.0
    dim: int | None = None
    n_modes: int = 1
    scope: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def gap(self) -> float:
        return self.best_entropy.bits - self.target_entropy.bits

    def to_dict(self) -> dict[str, Any]:
        return {
            "eta": self.eta,
            "k": self.k,
            "dim": self.dim,
            "n_modes": self.n_modes,
            "seed": self.seed,
            "families": list(self.families),
            "candidates_evaluated": self.candidates_evaluated,
            "candidates_skipped": self.candidates_skipped,
            "best_entropy_bits": self.best_entropy.bits,
            "target_entropy_bits": self.target_entropy.bits,
            "gap": self.gap,
            "thermal_gap": self.thermal_gap,
            "constraint_residual": self.constraint_residual,
            "best_state_descriptor": self.best_state,
            "scope": self.scope,
            **self.extra,
        }

    def save(self, output_path: Path, config: dict[str, Any] | None = None) -> None:
        """Write the report as JSON, embedding the resolved run configuration."""
        data = self.to_dict()
        if config is not None:
            data["config"] = config
        save_json(data, output_path)
