"""Error taxonomy and exit code mapping for CLI."""

from __future__ import annotations

from pydantic import ValidationError as PydanticValidationError


class LsqbenchError(Exception):
    """Base error for deterministic CLI exit codes."""

    exit_code: int = 2


class UsageError(LsqbenchError):
    """Invalid command usage or flag value."""

    exit_code = 1


class ConfigurationError(UsageError):
    """Invalid settings, column names or plot/report configuration."""


class DataError(LsqbenchError):
    """Input data that cannot be used as given."""

    exit_code = 2


class ShapeError(DataError):
    """Operands with non-conforming shapes."""


class ParseError(DataError):
    """Malformed CSV content."""

    def __init__(self, message: str, *, line: int, column: str | None = None) -> None:
        location = f"line {line}"
        if column is not None:
            location += f", column {column!r}"
        super().__init__(f"{location}: {message}")
        self.line = line
        self.column = column


class SchemaError(DataError):
    """Missing or unexpected columns."""


class DegenerateInputError(DataError):
    """Input too small or too degenerate for the requested operation."""


class EmptyInputError(DataError):
    """Aggregation requested over no records."""


class NumericalError(LsqbenchError):
    """Numerical breakdown during a factorization or solve."""

    exit_code = 2


class SingularMatrixError(NumericalError):
    """Matrix is not (numerically) positive definite."""


class NumericalFailure(NumericalError):
    """Iterative factorization did not converge."""

    def __init__(self, message: str, *, sweeps: int, off_norm: float) -> None:
        super().__init__(f"{message} (sweeps={sweeps}, off_norm={off_norm:.3e})")
        self.sweeps = sweeps
        self.off_norm = off_norm


def exit_code_for_exception(exc: BaseException) -> int:
    """Resolve a deterministic exit code for an exception."""
    if isinstance(exc, LsqbenchError):
        return exc.exit_code
    if isinstance(exc, PydanticValidationError):
        return UsageError.exit_code
    if isinstance(exc, OSError):
        return DataError.exit_code
    return LsqbenchError.exit_code
