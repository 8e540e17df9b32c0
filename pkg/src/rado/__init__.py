"""Computational Ramsey-type arithmetic on colourings of {1..N}."""

from rado.equations import LinearEquation, SolutionWitness, check_solution, find_solution_in_set
from rado.colorings import Coloring, greedy_coloring, validate

__version__ = "0.1.0"
SCHEMA_VERSION = 1

__all__ = [
    "Coloring",
    "LinearEquation",
    "SolutionWitness",
    "check_solution",
    "find_solution_in_set",
    "greedy_coloring",
    "validate",
]
