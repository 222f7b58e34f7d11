"""Smooth Weyl sums, arc dissections and exponent bookkeeping for Waring's
problem, with brute-force oracles for every computed quantity."""

from ._accel import BACKEND
from .errors import BudgetExceeded, ConvergenceError, DataError, PreconditionError, WaringError
from .smoothset import SmoothContext

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "ConvergenceError",
    "DataError",
    "PreconditionError",
    "SmoothContext",
    "WaringError",
]
