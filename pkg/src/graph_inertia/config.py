"""
Runtime settings: defaults, project YAML file, then GRAPH_INERTIA_* environment variables.
"""

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Optional

import yaml
from dotenv import find_dotenv, load_dotenv

from .constants import (
    CACHE_FILE_NAME,
    CONFIG_DIR_NAME,
    DEFAULT_LOG_LEVEL,
    DEFAULT_TOLERANCE,
    ENV_PREFIX,
    PROJECT_CONFIG_NAMES,
)
from .logging_config import get_logger

logger = get_logger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def default_home() -> Path:
    """Directory holding logs and the census cache."""
    return Path.home() / CONFIG_DIR_NAME


@dataclass(frozen=True)
class Settings:
    """Resolved settings for one CLI or library session."""

    jobs: int = 1
    log_level: str = DEFAULT_LOG_LEVEL
    log_file: Optional[Path] = None
    cache_path: Path = field(default_factory=lambda: default_home() / CACHE_FILE_NAME)
    use_cache: bool = False
    tolerance: float = DEFAULT_TOLERANCE

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Return a copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _parse_jobs(value: Any) -> int:
    jobs = int(value)
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    return jobs


def _parse_level(value: Any) -> str:
    level = str(value).upper()
    if level not in LOG_LEVELS:
        raise ValueError(f"unknown log level {value!r}")
    return level


def _parse_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _parse_tolerance(value: Any) -> float:
    tol = float(value)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return tol


_PARSERS: dict[str, Callable[[Any], Any]] = {
    "jobs": _parse_jobs,
    "log_level": _parse_level,
    "log_file": lambda v: Path(v).expanduser(),
    "cache_path": lambda v: Path(v).expanduser(),
    "use_cache": _parse_bool,
    "tolerance": _parse_tolerance,
}

_ENV_KEYS = {
    "jobs": "JOBS",
    "log_level": "LOG_LEVEL",
    "log_file": "LOG_FILE",
    "cache_path": "CACHE",
    "use_cache": "USE_CACHE",
    "tolerance": "TOLERANCE",
}


def find_project_config(start_path: Optional[Path] = None) -> Optional[Path]:
    """Walk up from start_path looking for a .graph-inertia.yml file."""
    current = (start_path or Path.cwd()).resolve()

    while True:
        for name in PROJECT_CONFIG_NAMES:
            candidate = current / name
            if candidate.is_file():
                return candidate
        if current == current.parent:
            return None
        current = current.parent


def load_project_config(config_file: Path) -> Optional[dict[str, Any]]:
    """Load a project YAML config; None when unreadable or not a mapping."""
    try:
        with open(config_file) as f:
            config = yaml.safe_load(f)
    except (yaml.YAMLError, OSError) as e:
        logger.warning(f"Ignoring unreadable config {config_file}: {e}")
        return None

    if config is None:
        return {}
    if not isinstance(config, dict):
        logger.warning(f"Ignoring config {config_file}: top level is not a mapping")
        return None
    return config


def _apply(values: dict[str, Any], raw: dict[str, Any], source: str) -> None:
    for key, value in raw.items():
        parser = _PARSERS.get(key)
        if parser is None:
            logger.warning(f"Unknown setting {key!r} in {source}")
            continue
        try:
            values[key] = parser(value)
        except (TypeError, ValueError) as e:
            logger.warning(f"Invalid value for {key} in {source}: {e}")


def load_settings(start_path: Optional[Path] = None, env_file: Optional[Path] = None) -> Settings:
    """Resolve settings from defaults, the project config file and the environment."""
    values: dict[str, Any] = {}

    config_file = find_project_config(start_path)
    if config_file:
        raw = load_project_config(config_file)
        if raw:
            logger.debug(f"Loaded project config from {config_file}")
            _apply(values, raw, str(config_file))

    dotenv_path = env_file or find_dotenv(usecwd=True)
    if dotenv_path:
        load_dotenv(dotenv_path=dotenv_path, override=False)
    env_raw = {
        key: os.environ[ENV_PREFIX + suffix]
        for key, suffix in _ENV_KEYS.items()
        if ENV_PREFIX + suffix in os.environ
    }
    _apply(values, env_raw, "environment")

    return Settings(**values)
