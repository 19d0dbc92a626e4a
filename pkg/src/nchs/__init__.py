"""Noncommutative complete homogeneous symmetric polynomials.

Exact Gram matrices, rational sum-of-hermitian-squares certificates and the
sharp constant ``mu_{n,d}`` in the operator inequality
``H_{2d}(X) >= mu_{n,d} (X_1^{2d} + ... + X_n^{2d})``.
"""
from .bounds import bound_report, mu_closed, mu_schur
from .certify import ldl, sohs_certificate, verify_certificate
from .gram import RatMatrix, gram_c, gram_nc, projection_m
from .polynomials import CPoly, NCPoly, chs, nchs

__version__ = "0.1.0"

__all__ = [
    "CPoly", "NCPoly", "RatMatrix", "bound_report", "chs", "gram_c", "gram_nc",
    "ldl", "mu_closed", "mu_schur", "nchs", "projection_m", "sohs_certificate",
    "verify_certificate",
]
