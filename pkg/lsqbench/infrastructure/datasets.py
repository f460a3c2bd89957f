"""CSV datasets: ingestion of user-supplied regression data and problem dumps.

Any CSV with a header row and a numeric target column can be loaded, so
real-world datasets are supported without bundling them. Lines starting
with ``#`` are comments; generated problems record their recipe and
ground truth that way.
"""

from __future__ import annotations

import csv
import io
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

import numpy as np
import pandas as pd

from lsqbench.core.datagen import SyntheticProblem
from lsqbench.core.matcore import Matrix, Vector
from lsqbench.errors import DegenerateInputError, ParseError, SchemaError
from lsqbench.infrastructure.records import format_float

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Dataset:
    x: Matrix
    y: Vector
    feature_names: tuple[str, ...]
    standardized: bool = False


def _data_lines(text: str) -> tuple[str, list[int]]:
    """Strip comment and blank lines, remembering physical line numbers."""
    kept: list[str] = []
    numbers: list[int] = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        kept.append(line)
        numbers.append(number)
    return "\n".join(kept), numbers


def _numeric_column(frame: pd.DataFrame, column: str, line_numbers: list[int]) -> Vector:
    """Parse one column with Python's correctly rounded ``float``."""
    raw = frame[column]
    values = np.empty(len(raw))
    for row, text in enumerate(raw.tolist()):
        try:
            values[row] = float(text.strip())
        except ValueError:
            raise ParseError(
                f"non-numeric value {text!r}",
                line=line_numbers[row + 1],
                column=column,
            ) from None
    return values


def standardize_columns(x: Matrix, names: tuple[str, ...]) -> Matrix:
    """Center each column and scale to unit sample standard deviation.

    Constant columns are only centered (they become all zeros).
    """
    means = x.mean(axis=0)
    centered = x - means
    stds = centered.std(axis=0, ddof=1)
    constant = stds <= np.finfo(np.float64).eps * np.maximum(np.abs(means), 1.0)
    for name in np.asarray(names)[constant]:
        logger.warning("feature %r is constant; left centered instead of scaled", str(name))
    scale = np.where(constant, 1.0, stds)
    result = centered / scale
    result[:, constant] = 0.0
    return result


def parse_dataset(
    text: str,
    target_column: str,
    *,
    standardize: bool = False,
    source: str = "<string>",
) -> Dataset:
    body, line_numbers = _data_lines(text)
    if not body:
        raise SchemaError(f"{source}: no header row")
    try:
        frame = pd.read_csv(
            io.StringIO(body),
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
        )
    except pd.errors.ParserError as exc:
        match = re.search(r"line (\d+)", str(exc))
        index = int(match.group(1)) - 1 if match else -1
        line = line_numbers[index] if 0 <= index < len(line_numbers) else 0
        raise ParseError(f"{source}: malformed row", line=line) from exc
    frame.columns = [str(column).strip() for column in frame.columns]
    if target_column not in frame.columns:
        raise SchemaError(
            f"{source}: target column {target_column!r} not in header "
            f"({', '.join(frame.columns)})"
        )
    features = tuple(column for column in frame.columns if column != target_column)
    if not features:
        raise SchemaError(f"{source}: no feature columns besides {target_column!r}")
    if len(frame) < 2:
        raise DegenerateInputError(f"{source}: need at least 2 data rows, found {len(frame)}")

    y = _numeric_column(frame, target_column, line_numbers)
    x = np.column_stack([_numeric_column(frame, name, line_numbers) for name in features])
    if standardize:
        x = standardize_columns(x, features)
    logger.debug("loaded %s: %d rows, %d features", source, x.shape[0], x.shape[1])
    return Dataset(x=x, y=y, feature_names=features, standardized=standardize)


def load_csv_dataset(path: Path, target_column: str, standardize: bool = False) -> Dataset:
    """Load ``path``; the target column becomes ``y``, the rest ``x`` in header order."""
    text = path.read_text(encoding="utf-8")
    return parse_dataset(text, target_column, standardize=standardize, source=str(path))


def write_problem(problem: SyntheticProblem, stream: TextIO) -> None:
    """Dump a synthetic problem: recipe and ground truth as comments, then data."""
    spec = problem.spec
    stream.write(f"# n={spec.n}\n")
    stream.write(f"# d={spec.d}\n")
    stream.write(f"# cond={format_float(spec.cond)}\n")
    stream.write(f"# noise_sigma={format_float(spec.noise_sigma)}\n")
    stream.write(f"# seed={spec.seed}\n")
    stream.write(f"# beta_star={','.join(format_float(v) for v in problem.beta_star)}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow([f"x_{j}" for j in range(1, problem.d + 1)] + ["y"])
    for row, target in zip(problem.x, problem.y):
        writer.writerow([format_float(v) for v in row] + [format_float(target)])


def write_problem_csv(problem: SyntheticProblem, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        write_problem(problem, handle)
    logger.info("wrote problem to %s", path)
    return path
