"""
Configuration for the lab.

Settings come from the process environment and from optional ``.env`` files,
in this order of precedence:

1. System environment variables (already loaded)
2. ``.env.local`` (user-specific overrides)
3. ``.env`` (project defaults)
4. ``.env.example`` (example configuration)
"""

import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, List

from dotenv import dotenv_values, load_dotenv

from .errors import DimensionLimitError, PreconditionError

logger = logging.getLogger(__name__)

ENV_FILES = (".env.local", ".env", ".env.example")
MODES = ("rational", "float")


def load_environment(search_dir: Path = Path("."), env_files: Iterable[str] = ENV_FILES) -> List[str]:
    """
    Load environment variables from .env files in order of precedence.

    Variables already present in the environment are never overridden, so a
    file earlier in ``env_files`` wins over later ones.

    Args:
        search_dir (Path): Directory searched for the files
        env_files (Iterable[str]): File names, highest precedence first

    Returns:
        List[str]: Names of the files that were found and loaded
    """
    loaded = []
    for env_file in env_files:
        env_path = search_dir / env_file
        if not env_path.exists():
            continue
        load_dotenv(dotenv_path=env_path, override=False)
        loaded.append(env_file)
        # Log keys only, never values
        keys = [key for key in dotenv_values(env_path) if key.startswith("CVLAB_")]
        logger.debug(f"Loaded {env_file} from {env_path.absolute()} (keys: {keys})")
    if not loaded:
        logger.debug("No .env files found. Using system environment variables only.")
    return loaded


def _env_flag(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class LabConfig:
    """Process-wide settings."""

    mode: str = "rational"
    max_ambient_dim: int = 4
    workers: int = 1
    seed: int = 0
    log_level: str = "WARNING"
    show_progress: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise PreconditionError(f"Unknown mode {self.mode!r}, expected one of {MODES}", code="invalid mode")
        if self.max_ambient_dim < 1:
            raise PreconditionError("max_ambient_dim must be positive", code="invalid config")
        if self.workers < 1:
            raise PreconditionError("workers must be positive", code="invalid config")

    @property
    def exact(self) -> bool:
        return self.mode == "rational"

    @classmethod
    def from_env(cls) -> "LabConfig":
        """Build a config from ``CVLAB_*`` environment variables."""
        defaults = cls()
        return cls(
            mode=os.getenv("CVLAB_MODE", defaults.mode).strip().lower(),
            max_ambient_dim=int(os.getenv("CVLAB_MAX_DIM", defaults.max_ambient_dim)),
            workers=int(os.getenv("CVLAB_WORKERS", defaults.workers)),
            seed=int(os.getenv("CVLAB_SEED", defaults.seed)),
            log_level=os.getenv("CVLAB_LOG_LEVEL", defaults.log_level).upper(),
            show_progress=_env_flag(os.getenv("CVLAB_PROGRESS", "0")),
        )


_config = LabConfig()


def get_config() -> LabConfig:
    return _config


def set_config(config: LabConfig = None, **changes) -> LabConfig:
    """Replace the process-wide config, either wholesale or field by field."""
    global _config
    base = config if config is not None else _config
    _config = replace(base, **changes) if changes else base
    return _config


def dimension_guard(dim: int) -> None:
    """Refuse double description above the configured ambient dimension."""
    limit = get_config().max_ambient_dim
    if dim > limit:
        raise DimensionLimitError(
            f"Ambient dimension {dim} exceeds the configured limit {limit}",
            details={"dim": dim, "limit": limit},
        )
