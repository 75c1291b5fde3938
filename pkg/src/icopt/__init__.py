"""Optimal linear index codes over GF(2) via an equivalent network code."""

from .problem import IndexCodingProblem, Receiver, load_problem
from .solver import IndexCode, full_report, optimal_length

__all__ = ["IndexCode", "IndexCodingProblem", "Receiver", "full_report", "load_problem", "optimal_length"]
__version__ = "0.1.0"
