"""
Tests for settings resolution.
"""

import os
from pathlib import Path

import pytest

from graph_inertia.config import (
    Settings,
    default_home,
    find_project_config,
    load_project_config,
    load_settings,
)


@pytest.fixture
def project(tmp_path):
    """A project directory with a nested working directory and no .env file."""
    nested = tmp_path / "project" / "src" / "deep"
    nested.mkdir(parents=True)
    return tmp_path / "project", nested


class TestProjectConfig:
    """Test project YAML discovery and parsing."""

    def test_find_walks_up(self, project):
        """Test the config file is found from a nested directory."""
        root, nested = project
        config_file = root / ".graph-inertia.yml"
        config_file.write_text("jobs: 4\n")
        assert find_project_config(nested) == config_file.resolve()

    def test_find_yaml_extension(self, project):
        """Test the .yaml spelling."""
        root, nested = project
        config_file = root / ".graph-inertia.yaml"
        config_file.write_text("jobs: 4\n")
        assert find_project_config(nested) == config_file.resolve()

    def test_load(self, tmp_path):
        """Test valid, empty and malformed files."""
        good = tmp_path / "good.yml"
        good.write_text("jobs: 2\nlog_level: debug\n")
        assert load_project_config(good) == {"jobs": 2, "log_level": "debug"}

        blank = tmp_path / "blank.yml"
        blank.write_text("")
        assert load_project_config(blank) == {}

        listing = tmp_path / "list.yml"
        listing.write_text("- 1\n- 2\n")
        assert load_project_config(listing) is None

        broken = tmp_path / "broken.yml"
        broken.write_text("jobs: [1, 2\n")
        assert load_project_config(broken) is None


class TestLoadSettings:
    """Test layered settings."""

    def test_defaults(self, project, temp_home):
        """Test defaults with no config file and no environment."""
        _, nested = project
        settings = load_settings(nested, env_file=nested / ".env")
        assert settings.jobs == 1
        assert settings.log_level == "INFO"
        assert settings.use_cache is False
        assert settings.cache_path == temp_home / ".graph_inertia" / "census.db"
        assert default_home() == temp_home / ".graph_inertia"

    def test_yaml(self, project):
        """Test values from the project file."""
        root, nested = project
        (root / ".graph-inertia.yml").write_text(
            "jobs: 3\nlog_level: warning\nuse_cache: yes\ntolerance: 1e-10\ncache: x\n"
        )
        settings = load_settings(nested, env_file=nested / ".env")
        assert settings.jobs == 3
        assert settings.log_level == "WARNING"
        assert settings.use_cache is True
        assert settings.tolerance == pytest.approx(1e-10)

    def test_environment_overrides_yaml(self, project, monkeypatch, tmp_path):
        """Test GRAPH_INERTIA_* variables win over the project file."""
        root, nested = project
        (root / ".graph-inertia.yml").write_text("jobs: 3\n")
        monkeypatch.setenv("GRAPH_INERTIA_JOBS", "6")
        monkeypatch.setenv("GRAPH_INERTIA_CACHE", str(tmp_path / "c.db"))
        settings = load_settings(nested, env_file=nested / ".env")
        assert settings.jobs == 6
        assert settings.cache_path == tmp_path / "c.db"

    def test_invalid_values_are_ignored(self, project, monkeypatch):
        """Test bad values fall back to the layer below."""
        root, nested = project
        (root / ".graph-inertia.yml").write_text("jobs: 0\nlog_level: loud\ntolerance: -1\n")
        monkeypatch.setenv("GRAPH_INERTIA_USE_CACHE", "maybe")
        settings = load_settings(nested, env_file=nested / ".env")
        assert settings == Settings(cache_path=settings.cache_path)

    def test_dotenv(self, project):
        """Test a .env file feeds the environment layer."""
        _, nested = project
        env_file = nested / ".env"
        env_file.write_text("GRAPH_INERTIA_JOBS=5\nGRAPH_INERTIA_LOG_LEVEL=error\n")
        try:
            settings = load_settings(nested, env_file=env_file)
        finally:
            os.environ.pop("GRAPH_INERTIA_JOBS", None)
            os.environ.pop("GRAPH_INERTIA_LOG_LEVEL", None)
        assert settings.jobs == 5
        assert settings.log_level == "ERROR"


class TestSettings:
    """Test the settings value."""

    def test_with_overrides(self):
        """Test None leaves a field alone."""
        settings = Settings(jobs=2)
        updated = settings.with_overrides(jobs=None, use_cache=True, cache_path=Path("/tmp/x.db"))
        assert updated.jobs == 2
        assert updated.use_cache is True
        assert updated.cache_path == Path("/tmp/x.db")
        assert settings.use_cache is False
