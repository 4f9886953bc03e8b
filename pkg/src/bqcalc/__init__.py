"""Exact computations in the algebras B_q(f) = k<u,v,w>/(uv - q vu, wu - q uw - f(v), wv - q^-1 vw - f(u))."""
from .errors import BqError, UsageError, VerificationError
from .pbw import AlgebraSpec, Element, parse_element
from .scalars import QQ, QQ_q, cyclotomic_field, gauss_binomial, q_number

__all__ = [
    "AlgebraSpec", "BqError", "Element", "QQ", "QQ_q", "UsageError", "VerificationError",
    "cyclotomic_field", "gauss_binomial", "parse_element", "q_number",
]
__version__ = "0.1.0"
