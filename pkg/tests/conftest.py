"""
Shared fixtures for graph-inertia tests.
"""

import random
import tempfile
from pathlib import Path

import pytest

from graph_inertia.census_store import CensusStore
from graph_inertia.config import Settings
from graph_inertia.graph import Graph, from_edges

ENV_KEYS = ("JOBS", "LOG_LEVEL", "LOG_FILE", "CACHE", "USE_CACHE", "TOLERANCE")


@pytest.fixture(autouse=True)
def temp_home(monkeypatch):
    """Point the home directory at a temporary one and clear GRAPH_INERTIA_* variables."""
    with tempfile.TemporaryDirectory() as tmpdir:
        home_path = Path(tmpdir)
        monkeypatch.setattr(Path, "home", lambda: home_path)
        for key in ENV_KEYS:
            monkeypatch.delenv(f"GRAPH_INERTIA_{key}", raising=False)
        yield home_path


@pytest.fixture
def store(tmp_path):
    """Create a CensusStore instance with a temporary database."""
    return CensusStore(db_path=tmp_path / "census.db")


@pytest.fixture
def settings(tmp_path):
    """Settings that keep the cache and logs inside tmp_path."""
    return Settings(cache_path=tmp_path / "cache" / "census.db", log_file=tmp_path / "cli.log")


@pytest.fixture
def rng():
    """Seeded random source so property tests are repeatable."""
    return random.Random(20240611)


@pytest.fixture
def random_graph(rng):
    """Factory for G(n, 1/2) graphs drawn from the seeded source."""

    def make(n: int, density: float = 0.5) -> Graph:
        edges = [(u, v) for v in range(n) for u in range(v) if rng.random() < density]
        return from_edges(n, edges)

    return make
