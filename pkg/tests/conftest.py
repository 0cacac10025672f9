"""Pytest configuration and fixtures."""

import json

import numpy as np
import pytest

from bosoncast.gaussian_states import random_state


@pytest.fixture
def rng():
    """Seeded generator so random property tests are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def gaussian_state_file(tmp_path):
    """A random two-mode Gaussian state written as JSON."""
    state = random_state(2, np.random.default_rng(3))
    path = tmp_path / "state.json"
    path.write_text(json.dumps(state.to_dict()))
    return path


@pytest.fixture
def config_file(tmp_path):
    """Write a JSON config file and return its path."""

    def _write(data, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return path

    return _write
