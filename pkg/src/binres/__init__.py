"""Combinatorial resolution of binomial basic objects with exact arithmetic."""

from .core import Binomial, Chart, Coefficient, normalize_binomial
from .resolver import ResolutionTree, TValue, emax_center, resolve, root_bboe

__all__ = [
    "Binomial",
    "Chart",
    "Coefficient",
    "ResolutionTree",
    "TValue",
    "emax_center",
    "normalize_binomial",
    "resolve",
    "root_bboe",
]
__version__ = "0.1.0"
