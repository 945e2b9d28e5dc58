"""Exact computations on the rank-4 matroid of the H4 root system."""

from .gfield import GoldenNumber
from .matroid import Flat, H4Matroid, Orthoframe
from .roots import RootPoint, load_h4

__version__ = "0.1.0"

__all__ = ["GoldenNumber", "Flat", "H4Matroid", "Orthoframe", "RootPoint", "load_h4", "__version__"]
