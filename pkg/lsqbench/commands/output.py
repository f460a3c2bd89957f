"""Deterministic CLI output helpers."""

from __future__ import annotations

import json
import math
from enum import Enum
from typing import Any, Callable, Iterable

import numpy as np

SCHEMA_VERSION = "v1"


def jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays to plain Python; non-finite floats become None."""
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [jsonable(item) for item in value.tolist()]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def emit_output(
    *,
    command: str,
    payload: dict[str, Any],
    json_output: bool,
    output_sink: Callable[[str], Any] = print,
    human_lines: Iterable[str] = (),
) -> None:
    """Emit deterministic CLI output."""
    if json_output:
        envelope = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "data": jsonable(payload),
        }
        output_sink(
            json.dumps(
                envelope,
                sort_keys=True,
                separators=(",", ":"),
                ensure_ascii=True,
                allow_nan=False,
            )
        )
        return
    for line in human_lines:
        output_sink(line)
