"""Special functions: gamma, digamma, fractional harmonic numbers,
one- and two-parameter Mittag-Leffler functions, and generalized
hypergeometric 3F2 series.

All functions are pure and safe to call from any number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _engine
from .errors import ConvergenceRangeError, DomainError

EULER_GAMMA = 0.5772156649015329

__all__ = [
    "EULER_GAMMA",
    "MLParams",
    "HyperParams",
    "gamma_fn",
    "digamma",
    "harmonic_number",
    "mittag_leffler",
    "mittag_leffler2",
    "mittag_leffler_array",
    "hyper_3f2",
]


@dataclass(frozen=True)
class MLParams:
    """Arguments of the two-parameter Mittag-Leffler function E_{alpha,beta}(z).

    ``beta = 1`` selects the one-parameter function.  Real arguments of
    either sign are supported inside the certified evaluation envelope.
    """

    alpha: float
    z: float
    beta: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 2.0:
            raise DomainError(f"alpha must be in (0, 2], got {self.alpha}")
        if self.beta < 0.0:
            raise DomainError(f"beta must be >= 0, got {self.beta}")

    def evaluate(self, tol: float = 1e-10) -> float:
        return mittag_leffler2(self.alpha, self.beta, self.z, tol=tol)


@dataclass(frozen=True)
class HyperParams:
    """Parameters of the 3F2 generalized hypergeometric series.

    ``upper`` holds the three numerator parameters, ``lower`` the two
    denominator parameters; requires |x| < 1 and no lower parameter equal
    to zero or a negative integer.
    """

    upper: Sequence[float]
    lower: Sequence[float]
    x: float

    def __post_init__(self):
        if len(self.upper) != 3 or len(self.lower) != 2:
            raise DomainError("hyper_3f2 takes 3 upper and 2 lower parameters")
        for b in self.lower:
            if b <= 0.0 and float(b).is_integer():
                raise DomainError(f"lower parameter {b} is zero or a negative integer")
        if not abs(self.x) < 1.0:
            raise ConvergenceRangeError(f"3F2 series requires |x| < 1, got x={self.x}")


def gamma_fn(x: float) -> float:
    """Gamma function for x > 0; relative error a few ulp on [0.1, 50]."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"gamma_fn requires x > 0, got {x}")
    if x > 171.6:
        raise ConvergenceRangeError(f"gamma_fn({x}) overflows double precision")
    return math.gamma(x)


_DIGAMMA_SHIFT = 8.0
# B_{2n} / 2n for the asymptotic series of digamma
_DIGAMMA_COEF = (
    1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
)


def digamma(x: float) -> float:
    """Digamma psi(x) for x > 0 via recurrence shift and asymptotic series."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"digamma requires x > 0, got {x}")
    acc = 0.0
    while x < _DIGAMMA_SHIFT:
        acc -= 1.0 / x
        x += 1.0
    w = 1.0 / (x * x)
    s = 0.0
    for c in reversed(_DIGAMMA_COEF):
        s = (s + c) * w
    return acc + math.log(x) - 0.5 / x - s


def harmonic_number(alpha: float) -> float:
    """Fractional harmonic number H(alpha) = psi(alpha + 1) + euler_gamma."""
    alpha = float(alpha)
    if not alpha > -1.0:
        raise DomainError(f"harmonic_number requires alpha > -1, got {alpha}")
    if alpha == 0.0:
        return 0.0
    return digamma(alpha + 1.0) + EULER_GAMMA


def mittag_leffler(alpha: float, z: float, tol: float = 1e-10) -> float:
    """One-parameter Mittag-Leffler function E_alpha(z).

    Evaluated by a certified two-strategy scheme (double-double power series
    or large-argument expansion).  Raises ConvergenceRangeError when neither
    strategy meets ``tol`` rather than returning a doubtful value.
    """
    return mittag_leffler2(alpha, 1.0, z, tol=tol)


def mittag_leffler2(alpha: float, beta: float, z: float, tol: float = 1e-10) -> float:
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z)."""
    alpha = float(alpha)
    beta = float(beta)
    if not 0.0 < alpha <= 2.0:
        raise DomainError(f"alpha must be in (0, 2], got {alpha}")
    if beta < 0.0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    if beta == 0.0:
        # E_{a,0}(z) = z * E_{a,a}(z), avoiding the 1/Gamma(0) = 0 leading term
        return float(z) * _engine.ml_eval(alpha, alpha, z, tol)
    return _engine.ml_eval(alpha, beta, z, tol)


def mittag_leffler_array(alpha: float, beta: float, z, tol: float = 1e-12) -> np.ndarray:
    """Vectorized E_{alpha,beta} over a 1-d array (beta > 0)."""
    return _engine.ml_eval_array(alpha, beta, np.asarray(z, dtype=float), tol)


_HYPER_KMAX = 200000


def hyper_3f2(params: HyperParams) -> float:
    """Generalized hypergeometric 3F2 at real |x| < 1 by direct summation.

    Terms are accumulated with compensated summation and truncated once the
    term magnitude falls below 1e-16 times the partial sum.
    """
    a1, a2, a3 = (float(v) for v in params.upper)
    b1, b2 = (float(v) for v in params.lower)
    x = float(params.x)
    term = 1.0
    s = 1.0
    comp = 0.0
    for k in range(_HYPER_KMAX):
        term *= (a1 + k) * (a2 + k) * (a3 + k) * x / ((b1 + k) * (b2 + k) * (1.0 + k))
        if term == 0.0:
            break
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t
        if abs(term) <= 1e-16 * abs(s):
            break
    else:
        raise ConvergenceRangeError(f"3F2 series did not converge for x={x}")
    return s
