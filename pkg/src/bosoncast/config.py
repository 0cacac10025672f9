"""Run configuration for the CLI: flags > config file > defaults."""

import json
import logging
import os
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from bosoncast.errors import DomainError

logger = logging.getLogger(__name__)

THREADS_ENV = "BOSONCAST_THREADS"


def thread_count() -> int:
    """Worker threads allowed by BOSONCAST_THREADS, default min(4, cpu count)."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return min(4, os.cpu_count() or 1)
    try:
        threads = int(raw)
    except ValueError as e:
        raise DomainError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from e
    if threads < 1:
        raise DomainError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return threads


def load_config_file(path: Path | None) -> dict[str, Any]:
    """Read a JSON object of option values; keys may use dashes or underscores."""
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise DomainError(f"config file '{path}' does not exist") from e
    except json.JSONDecodeError as e:
        raise DomainError(f"config file '{path}' is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise DomainError(f"config file '{path}' must hold a JSON object")
    return {str(key).replace("-", "_"): value for key, value in data.items()}


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters of one CLI command.

    Values come from the command-line flags that were actually given, then
    the config file, then the command defaults. Keys outside the defaults are
    rejected so typos in config files surface.
    """

    command: str
    values: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def resolve(
        cls,
        command: str,
        defaults: Mapping[str, Any],
        flags: Mapping[str, Any],
        config_path: Path | None = None,
    ) -> "RunConfig":
        from_file = load_config_file(config_path)
        unknown = sorted(set(from_file) - set(defaults))
        if unknown:
            raise DomainError(f"unknown config keys for '{command}': {', '.join(unknown)}")
        values = dict(defaults)
        values.update(from_file)
        values.update({key: value for key, value in flags.items() if value is not None})
        logger.debug("resolved %s config: %s", command, values)
        return cls(command, values)

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    def get(self, key: str, default: Any = None) -> Any:
        return self.values.get(key, default)

    def as_dict(self) -> dict[str, Any]:
        """Config as echoed into reports; paths become strings."""
        out: dict[str, Any] = {"command": self.command}
        for key in sorted(self.values):
            value = self.values[key]
            if isinstance(value, Path):
                value = str(value)
            elif isinstance(value, tuple):
                value = list(value)
            out[key] = value
        return out
