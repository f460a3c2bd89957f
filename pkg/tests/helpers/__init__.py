"""Test helper utilities."""

from .cli import json_data, run_cli
from .numerics import random_matrix, relative_frobenius, well_conditioned_problem

__all__ = [
    "json_data",
    "run_cli",
    "random_matrix",
    "relative_frobenius",
    "well_conditioned_problem",
]
