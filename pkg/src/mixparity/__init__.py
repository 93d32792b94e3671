"""Exact character-level calculus for mixed parity and tilting sheaves on flag varieties."""

from .coxeter import CoxeterSystem, WeylElement, dual_system
from .ring import LaurentPoly, bar, sigma, subst_neg_inv

__version__ = "0.1.0"

__all__ = [
    "CoxeterSystem",
    "LaurentPoly",
    "WeylElement",
    "bar",
    "dual_system",
    "sigma",
    "subst_neg_inv",
]
