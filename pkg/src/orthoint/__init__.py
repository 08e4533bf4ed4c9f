"""Ortho-integral hyperbolic pants and one-holed tori."""

from .exact import Rat, as_rat
from .geometry import OrthoTriple
from .orbit import Spectrum, SpectrumEntry, enumerate_spectrum

__all__ = ["Rat", "as_rat", "OrthoTriple", "Spectrum", "SpectrumEntry", "enumerate_spectrum"]
__version__ = "0.1.0"
