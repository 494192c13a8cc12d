"""High-precision Stieltjes constants, Hurwitz zeta values and Dirichlet
L-functions from convergent double series, with explicit error bounds."""

from .errors import (CrossCheckMismatch, DomainError, IdentityViolation,
                     InvalidSequence, NonConvergence, PolePassed, ZetaSeriesError)
from .mpcore import DEFAULT_PRECISION, DEFAULT_TOLERANCE, Precision, SumReport, Tolerance
from .oracle import EMConfig, digamma_ref, hurwitz_zeta_ref, stieltjes_ref
from .stieltjes import (Method, StieltjesQuery, StieltjesValue, euler_gamma_telescope,
                        gamma0_telescope, stieltjes_base_k,
                        stieltjes_base_k_trapezoid, stieltjes_dyadic)
from .zeta import (DirichletCharacter, Residual, ZetaArgs, brun_beta, brun_zeta,
                   dirichlet_l, hurwitz_zeta_base_k, hurwitz_zeta_series, identity_suite)

__version__ = "0.1.0"

__all__ = [
    "CrossCheckMismatch", "DEFAULT_PRECISION", "DEFAULT_TOLERANCE", "DirichletCharacter",
    "DomainError", "EMConfig", "IdentityViolation", "InvalidSequence", "Method",
    "NonConvergence", "PolePassed", "Precision", "Residual", "StieltjesQuery",
    "StieltjesValue", "SumReport", "Tolerance", "ZetaArgs", "ZetaSeriesError",
    "brun_beta", "brun_zeta", "digamma_ref", "dirichlet_l", "euler_gamma_telescope",
    "gamma0_telescope", "hurwitz_zeta_base_k", "hurwitz_zeta_ref", "hurwitz_zeta_series",
    "identity_suite", "stieltjes_base_k", "stieltjes_base_k_trapezoid",
    "stieltjes_dyadic", "stieltjes_ref",
]
