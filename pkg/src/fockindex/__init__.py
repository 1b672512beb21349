"""Truncated oscillator/spinor models, boundary symbol calculus, and
relative index arithmetic on finite graded bases."""

from . import cli, errors, fock, matrixio, models, pairs, spinors, symbols, topo

__version__ = "0.1.0"

__all__ = [
    "cli",
    "errors",
    "fock",
    "matrixio",
    "models",
    "pairs",
    "spinors",
    "symbols",
    "topo",
    "__version__",
]
