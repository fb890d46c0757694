import sys
from pathlib import Path

import numpy as np
import pytest

# Add repository root to path
root_path = Path(__file__).parent.parent
sys.path.insert(0, str(root_path))

from src.models.graph import TwoLayerGraph  # noqa: E402
from src.utils.settings import get_settings  # noqa: E402

EXAMPLE_SURVEY = root_path / "config" / "surveys" / "example_survey.json"


def random_two_layer(
    node_count: int, strong_density: float, weak_density: float, seed: int
) -> TwoLayerGraph:
    """Erdos-Renyi style two-layer graph; each pair is strong, weak or absent."""
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(node_count, k=1)
    pairs = np.stack([rows, cols], axis=1)
    draws = rng.random(rows.size)
    strong = pairs[draws < strong_density]
    weak = pairs[(draws >= strong_density) & (draws < strong_density + weak_density)]
    return TwoLayerGraph.from_edges(node_count, strong, weak)


@pytest.fixture
def two_layer_factory():
    """Factory for random two-layer graphs."""
    return random_two_layer


@pytest.fixture
def example_survey_path() -> Path:
    return EXAMPLE_SURVEY


@pytest.fixture
def mock_env(monkeypatch):
    """Mock environment variables for testing."""
    monkeypatch.setenv("TIESURVEY_LOG_LEVEL", "WARNING")
    monkeypatch.setenv("TIESURVEY_WORKERS", "1")
    monkeypatch.setenv("TIESURVEY_MAX_SURVEY_RETRIES", "5")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
