"""
Pytest configuration and fixtures.
"""

import math
import tempfile
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner
from hypothesis import strategies as st

from ico_teleport.gates import PRESET_NAMES, CUParams, preset


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def rng():
    """Seeded generator so every test run sees the same random inputs."""
    return np.random.default_rng(1234)


@pytest.fixture
def runner():
    """Create a Click test runner."""
    return CliRunner()


@pytest.fixture(params=PRESET_NAMES)
def preset_params(request):
    """Parameters of each named gate in turn."""
    return preset(request.param).params


@pytest.fixture
def cnot_params():
    return preset("cnot").params


@pytest.fixture
def clean_env(monkeypatch):
    """Remove configuration overrides so defaults apply."""
    for name in (
        "ICO_TELEPORT_SEED",
        "ICO_TELEPORT_TOLERANCE",
        "ICO_TELEPORT_TRIALS",
        "ICO_TELEPORT_GRID_N",
        "ICO_TELEPORT_BRANCH_POLICY",
        "ICO_TELEPORT_OUTPUT_DIR",
    ):
        monkeypatch.delenv(name, raising=False)


def random_params(rng: np.random.Generator) -> CUParams:
    """CU parameters with uniform angles and a random unit axis."""
    alpha, theta = rng.uniform(-math.pi, math.pi, size=2)
    n = rng.normal(size=3)
    return CUParams(float(alpha), float(theta), tuple(n / np.linalg.norm(n)))


# Hypothesis strategies

angles = st.floats(min_value=-2 * math.pi, max_value=2 * math.pi, allow_nan=False)


@st.composite
def unit_vectors(draw):
    """Unit 3-vectors from normalized Gaussian-like components."""
    components = draw(
        st.lists(st.floats(min_value=-1.0, max_value=1.0), min_size=3, max_size=3).filter(
            lambda v: math.sqrt(sum(x * x for x in v)) > 1e-3
        )
    )
    norm = math.sqrt(sum(x * x for x in components))
    return tuple(x / norm for x in components)


@st.composite
def cu_params(draw):
    return CUParams(draw(angles), draw(angles), draw(unit_vectors()))
