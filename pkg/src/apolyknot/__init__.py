"""Exact A-polynomials of satellite knots, their boundary slopes and Mahler measures."""

from .engine import Result, apoly, apoly_of
from .knotlang import parse
from .laurent import L, M, ONE, FactoredAPoly, GZFactor, LPoly2, doteq, normalize

__all__ = [
    "FactoredAPoly", "GZFactor", "L", "LPoly2", "M", "ONE", "Result",
    "apoly", "apoly_of", "doteq", "normalize", "parse",
]
__version__ = "0.1.0"
