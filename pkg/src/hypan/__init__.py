"""Hyperbolic (split-complex) numbers: arithmetic, series, calculus, contour
integrals, roots, Clifford-algebra views and wave-equation reconstruction."""
from .errors import HypError
from .hypercore import I, ONE, ZERO, HNumber

__version__ = "0.1.0"
__all__ = ["HNumber", "I", "ONE", "ZERO", "HypError", "__version__"]
