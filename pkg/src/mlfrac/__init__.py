"""Fractional operators with non-singular Mittag-Leffler kernels.

Numerical library and CLI for the Caputo-type and Riemann-Liouville-type
fractional derivatives with Mittag-Leffler kernel, the exponential-kernel
baseline, the associated fractional integral, Laplace-transform identity
checks, a fractional relaxation-equation solver, and a cylindrical-shell
heat-transfer model, with an executable verification suite.
"""

from ._backend import BACKEND, available_backends
from .ab_core import (AlphaParam, OperatorResult, SampledFunction, ab_integral,
                      abc_derivative, abr_derivative, cf_derivative,
                      kernel_moment, relation_term)
from .errors import (ConvergenceRangeError, DomainError, PreconditionError,
                     ResolutionError, TruncationWarning)
from .fode import ForcingSpec, commutation_check, solve_abc_ode
from .heat import HeatShellSpec, RadialProfile, heat_flux, shell_temperature_drop
from .report import VerificationReport
from .specfun import (HyperParams, MLParams, digamma, gamma_fn, harmonic_number,
                      hyper_3f2, mittag_leffler, mittag_leffler2)
from .transforms import (TransformSample, abc_laplace_closed, abr_laplace_closed,
                         numerical_laplace, verify_transforms)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "available_backends",
    "__version__",
    "AlphaParam",
    "SampledFunction",
    "OperatorResult",
    "abc_derivative",
    "abr_derivative",
    "cf_derivative",
    "ab_integral",
    "kernel_moment",
    "relation_term",
    "ForcingSpec",
    "solve_abc_ode",
    "commutation_check",
    "HeatShellSpec",
    "RadialProfile",
    "heat_flux",
    "shell_temperature_drop",
    "MLParams",
    "HyperParams",
    "gamma_fn",
    "digamma",
    "harmonic_number",
    "mittag_leffler",
    "mittag_leffler2",
    "hyper_3f2",
    "TransformSample",
    "numerical_laplace",
    "abc_laplace_closed",
    "abr_laplace_closed",
    "verify_transforms",
    "VerificationReport",
    "DomainError",
    "ConvergenceRangeError",
    "ResolutionError",
    "PreconditionError",
    "TruncationWarning",
]
