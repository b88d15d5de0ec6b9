"""Exact computations for the quantum n-dimer model on planar bipartite ciliated graphs."""

from .laurent import QLaurent, qint, qfact, qbinom, NotDivisible

__all__ = ["QLaurent", "qint", "qfact", "qbinom", "NotDivisible"]
__version__ = "0.1.0"
