"""Test search report serialisation."""

import json

import pytest

from bosoncast.entropy_core import EntropyValue
from bosoncast.reports import SearchReport


def _report(**overrides):
    fields = {
        "eta": 0.7,
        "k": 1.0,
        "seed": 7,
        "families": ("diagonal",),
        "best_state": {"family": "thermal", "candidate_id": 0},
        "best_entropy": EntropyValue(1.2),
        "target_entropy": EntropyValue(1.25),
        "constraint_residual": 0.0,
        "candidates_evaluated": 10,
        "dim": 40,
    }
    fields.update(overrides)
    return SearchReport(**fields)


def test_gap_is_best_minus_target():
    """A negative gap flags a candidate below the target."""
    assert _report().gap == pytest.approx(-0.05, abs=1e-15)


def test_save_embeds_config(tmp_path):
    """Saved reports carry the run configuration and the documented keys."""
    path = tmp_path / "report.json"
    _report().save(path, config={"command": "conjecture search", "seed": 7})
    data = json.loads(path.read_text())
    assert data["config"] == {"command": "conjecture search", "seed": 7}
    for key in (
        "eta",
        "k",
        "dim",
        "seed",
        "families",
        "candidates_evaluated",
        "best_entropy_bits",
        "target_entropy_bits",
        "gap",
        "constraint_residual",
        "best_state_descriptor",
    ):
        assert key in data
    assert data["families"] == ["diagonal"]
