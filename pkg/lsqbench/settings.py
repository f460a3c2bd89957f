"""Application settings: run defaults for generate, solve and sweep.

Priority order (highest first):
1. Command-line flags (applied by the commands)
2. Environment variables (``LSQBENCH_SEED``, ``LSQBENCH_LOG_LEVEL``, ``LSQBENCH_DEBUG``)
3. YAML settings file
4. Built-in defaults
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Mapping, Optional, TypeVar

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from lsqbench.core.bench import DEFAULT_CONDS, DEFAULT_DS, DEFAULT_NS, DEFAULT_SEED
from lsqbench.core.datagen import DEFAULT_NOISE_SIGMA
from lsqbench.core.solvers import GdConfig
from lsqbench.errors import ConfigurationError

CONFIG_ENV = "LSQBENCH_CONFIG"
_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
_TRUTHY = {"1", "true", "yes", "on"}

T = TypeVar("T")


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    noise_sigma: float = Field(default=DEFAULT_NOISE_SIGMA, ge=0.0)
    alpha: float = Field(default=0.01, gt=0.0)
    tol: float = Field(default=1e-6, gt=0.0)
    max_iter: int = Field(default=10_000, ge=1)
    normalized: bool = True
    repeats: int = Field(default=1, ge=1)
    ns: tuple[int, ...] = Field(default=DEFAULT_NS, min_length=1)
    ds: tuple[int, ...] = Field(default=DEFAULT_DS, min_length=1)
    conds: tuple[float, ...] = Field(default=DEFAULT_CONDS, min_length=1)
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(_LOG_LEVELS)}")
        return level

    def gd_config(
        self,
        *,
        alpha: Optional[float] = None,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None,
        normalized: Optional[bool] = None,
        record_history: bool = False,
    ) -> GdConfig:
        """GD hyperparameters with per-call overrides taking precedence."""
        return GdConfig(
            alpha=prefer(alpha, self.alpha),
            tol=prefer(tol, self.tol),
            max_iter=prefer(max_iter, self.max_iter),
            normalized=prefer(normalized, self.normalized),
            record_history=record_history,
        )


def prefer(cli_value: Optional[T], configured: T) -> T:
    return configured if cli_value is None else cli_value


def default_config_path() -> Path:
    return Path.home() / ".config" / "lsqbench" / "settings.yaml"


def resolve_config_path(cli_path: Optional[str | Path]) -> Optional[Path]:
    """``--config`` wins over ``LSQBENCH_CONFIG``; the default file is used only if present."""
    if cli_path:
        return Path(cli_path).expanduser()
    env_path = os.getenv(CONFIG_ENV)
    if env_path:
        return Path(env_path).expanduser()
    default = default_config_path()
    return default if default.exists() else None


def _read_file(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise ConfigurationError(f"settings file not found: {path}")
    try:
        loaded = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"{path}: invalid YAML: {exc}") from exc
    if loaded is None:
        return {}
    if not isinstance(loaded, dict):
        raise ConfigurationError(f"{path}: settings must be a mapping")
    return loaded


def _env_overrides(environ: Mapping[str, str]) -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    seed = environ.get("LSQBENCH_SEED")
    if seed:
        try:
            overrides["seed"] = int(seed)
        except ValueError as exc:
            raise ConfigurationError(f"LSQBENCH_SEED must be an integer, got {seed!r}") from exc
    level = environ.get("LSQBENCH_LOG_LEVEL")
    if level:
        overrides["log_level"] = level
    if environ.get("LSQBENCH_DEBUG", "").strip().lower() in _TRUTHY:
        overrides["log_level"] = "DEBUG"
    return overrides


def load_settings(
    path: Optional[Path],
    *,
    environ: Optional[Mapping[str, str]] = None,
) -> Settings:
    """Load settings from ``path`` (defaults only when None), then apply env overrides."""
    values = _read_file(path) if path is not None else {}
    values.update(_env_overrides(os.environ if environ is None else environ))
    try:
        return Settings(**values)
    except ValidationError as exc:
        source = str(path) if path is not None else "settings"
        raise ConfigurationError(f"{source}: {exc}") from exc
