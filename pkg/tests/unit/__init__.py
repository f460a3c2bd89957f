"""Unit tests for lsqbench components."""
