"""Quadratic-curve-lifted Reed-Solomon codes over GF(2^ell)."""

__version__ = "0.1.0"

from .code import CodeInstance, CodeSpec, build_code, encode, is_member
from .gf import GF, field
from .monomial import Curve, Line, Monomial, in_shadow, is_lrs_good, is_qc_good, mod_star

__all__ = [
    "CodeInstance",
    "CodeSpec",
    "Curve",
    "GF",
    "Line",
    "Monomial",
    "build_code",
    "encode",
    "field",
    "in_shadow",
    "is_lrs_good",
    "is_member",
    "is_qc_good",
    "mod_star",
]
