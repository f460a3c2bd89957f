"""Pytest configuration and shared fixtures."""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Iterator

import numpy as np
import pytest

from lsqbench.core.bench import BenchRecord
from lsqbench.infrastructure.records import load_reference_records


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    run_slow = os.getenv("RUN_SLOW", "").lower() in {"1", "true", "yes"}
    for item in items:
        path = str(item.fspath).replace("\\", "/")
        if "/tests/integration/" in path:
            item.add_marker(pytest.mark.integration)
        elif "/tests/unit/" in path:
            item.add_marker(pytest.mark.unit)
        if "slow" in item.keywords and not run_slow:
            item.add_marker(pytest.mark.skip(reason="slow test (set RUN_SLOW=1)"))


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> Iterator[None]:
    """Keep user settings, LSQBENCH_* variables and CLI log handlers out of every test."""
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    for name in list(os.environ):
        if name.startswith("LSQBENCH_"):
            monkeypatch.delenv(name, raising=False)
    yield
    from lsqbench import cli

    if cli._handler is not None:
        logging.getLogger().removeHandler(cli._handler)
        cli._handler = None
    logging.getLogger().setLevel(logging.WARNING)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def reference_records() -> list[BenchRecord]:
    return load_reference_records()


@pytest.fixture
def small_records() -> list[BenchRecord]:
    """Hand-built records over a 2x1x2 grid with known aggregates."""
    return [
        BenchRecord(100, 5, 1.0, 0.001, 0.01, 0.02, 0.01, 500, 1e-4, 1e-4, True),
        BenchRecord(100, 5, 0.001, 0.001, 0.01, 0.04, 2.0, 10000, 1e-4, 3.0, False),
        BenchRecord(200, 5, 1.0, 0.003, 0.03, 0.06, 0.03, 700, 1e-4, 1e-4, True),
        BenchRecord(200, 5, 0.001, 0.003, 0.03, 0.08, 4.0, 10000, 1e-4, 5.0, False),
    ]
