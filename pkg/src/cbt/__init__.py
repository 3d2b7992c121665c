"""Canonical bases of the truncated Fock space and affine Kazhdan-Lusztig polynomials."""

from .alcove import AffineWeylElement, Alcove, a_plus_of_point, alcove_of_point
from .canonical import Session
from .fock import FockVector, apply_word
from .kl import KLSession, n_poly
from .laurent import LaurentPoly
from .partition import Context, Partition
from .recursion import AlgorithmError

__all__ = [
    "AffineWeylElement",
    "Alcove",
    "AlgorithmError",
    "Context",
    "FockVector",
    "KLSession",
    "LaurentPoly",
    "Partition",
    "Session",
    "a_plus_of_point",
    "alcove_of_point",
    "apply_word",
    "n_poly",
]
