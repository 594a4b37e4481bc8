"""Exact graded linear algebra for plane curve freeness questions."""

from .poly import Polynomial, parse, to_text
from .jacobian import JacobianEngine, jacobian_triple
from .classify import CurveReport, analyze, classify_from_exponents, classify_from_tau, tau_bounds

__version__ = "0.1.0"

__all__ = [
    "Polynomial", "parse", "to_text", "JacobianEngine", "jacobian_triple",
    "CurveReport", "analyze", "classify_from_exponents", "classify_from_tau", "tau_bounds",
]
