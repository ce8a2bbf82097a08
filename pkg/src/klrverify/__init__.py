"""Exact KLR (quiver Hecke) algebra engine with categorification checks."""

__version__ = "0.1.0"

from .cartan import CartanDatum, CartanError, QMatrix, default_q, make_q, validate_cartan
from .cyclotomic import CycloConfig, CyclotomicAlgebra, CyclotomicError, build_quotient
from .klr import KLRAlgebra, KLRElement, Monomial

__all__ = [
    "__version__", "CartanDatum", "CartanError", "QMatrix", "default_q", "make_q",
    "validate_cartan", "CycloConfig", "CyclotomicAlgebra", "CyclotomicError",
    "build_quotient", "KLRAlgebra", "KLRElement", "Monomial",
]
