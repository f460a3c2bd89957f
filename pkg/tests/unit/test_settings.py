"""Unit tests for layered settings loading."""

from __future__ import annotations

from pathlib import Path

import pytest

from lsqbench.errors import ConfigurationError
from lsqbench.settings import (
    Settings,
    default_config_path,
    load_settings,
    prefer,
    resolve_config_path,
)


def test_default_config_path_is_deterministic(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("HOME", "/tmp/lsqbench-home")
    assert default_config_path() == Path("/tmp/lsqbench-home/.config/lsqbench/settings.yaml")


def test_defaults_without_file() -> None:
    settings = load_settings(None, environ={})
    assert settings == Settings()
    assert settings.seed == 2024
    assert settings.ns == (1000, 5000)
    assert settings.conds == (1.0, 0.001)
    assert settings.log_level == "WARNING"


def test_yaml_file_values(tmp_path: Path) -> None:
    path = tmp_path / "settings.yaml"
    path.write_text("seed: 7\nalpha: 0.02\nds: [5, 20]\nlog_level: info\n", encoding="utf-8")
    settings = load_settings(path, environ={})
    assert settings.seed == 7
    assert settings.alpha == 0.02
    assert settings.ds == (5, 20)
    assert settings.log_level == "INFO"


def test_json_is_accepted_as_yaml(tmp_path: Path) -> None:
    path = tmp_path / "settings.json"
    path.write_text('{"max_iter": 500, "normalized": false}', encoding="utf-8")
    settings = load_settings(path, environ={})
    assert settings.max_iter == 500
    assert settings.normalized is False


def test_environment_overrides_file(tmp_path: Path) -> None:
    path = tmp_path / "settings.yaml"
    path.write_text("seed: 7\nlog_level: ERROR\n", encoding="utf-8")
    settings = load_settings(path, environ={"LSQBENCH_SEED": "99", "LSQBENCH_DEBUG": "1"})
    assert settings.seed == 99
    assert settings.log_level == "DEBUG"


@pytest.mark.parametrize(
    "content",
    ["seed: -1\n", "unknown_key: 1\n", "log_level: LOUD\n", "- just\n- a list\n", "seed: [\n"],
)
def test_invalid_files_are_configuration_errors(tmp_path: Path, content: str) -> None:
    path = tmp_path / "settings.yaml"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ConfigurationError):
        load_settings(path, environ={})


def test_invalid_environment_seed() -> None:
    with pytest.raises(ConfigurationError):
        load_settings(None, environ={"LSQBENCH_SEED": "many"})


def test_explicit_missing_file_is_an_error(tmp_path: Path) -> None:
    with pytest.raises(ConfigurationError):
        load_settings(tmp_path / "nope.yaml", environ={})


def test_resolve_config_path_priority(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    assert resolve_config_path(None) is None
    monkeypatch.setenv("LSQBENCH_CONFIG", str(tmp_path / "env.yaml"))
    assert resolve_config_path(None) == tmp_path / "env.yaml"
    assert resolve_config_path(tmp_path / "cli.yaml") == tmp_path / "cli.yaml"


def test_gd_config_prefers_cli_values() -> None:
    config = Settings(alpha=0.05).gd_config(tol=1e-3, normalized=False)
    assert config.alpha == 0.05
    assert config.tol == 1e-3
    assert config.normalized is False
    assert prefer(None, 3) == 3
    assert prefer(0, 3) == 0
