"""Exact linear inequality systems and Fourier-Motzkin elimination."""

from secrecy_toolkit.polyhedral.fourier_motzkin import (
    EliminationStep,
    eliminate,
    eliminate_all,
    remove_redundant,
)
from secrecy_toolkit.polyhedral.lp import LPResult, is_feasible, is_implied, solve_standard_form
from secrecy_toolkit.polyhedral.system import EQ, LE, LinIneq, LinSystem, parse_inequality, to_fraction

__all__ = [
    "EQ",
    "LE",
    "EliminationStep",
    "LPResult",
    "LinIneq",
    "LinSystem",
    "eliminate",
    "eliminate_all",
    "is_feasible",
    "is_implied",
    "parse_inequality",
    "remove_redundant",
    "solve_standard_form",
    "to_fraction",
]
