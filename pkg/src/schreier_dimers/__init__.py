"""Dimer partition functions on self-similar Schreier graphs and Sierpinski gaskets."""

from .algebra import MultiPoly, derivative, evaluate, exact_divide, poly_sqrt

__version__ = "0.1.0"

__all__ = ["MultiPoly", "derivative", "evaluate", "exact_divide", "poly_sqrt", "__version__"]
