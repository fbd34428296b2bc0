"""Steady heat transfer through a heterogeneous cylindrical shell under the
fractional Fourier law.

Two operations: the closed-form temperature drop across the shell (a
hypergeometric/harmonic-number expression) and the radial heat-flux
profile, which applies the Riemann-Liouville-type fractional derivative in
the radial variable with the inner wall as lower terminal.

Two modelling caveats are inherited from the source formulation and kept
as printed rather than reinterpreted: the temperature-drop expression does
not reduce to the classical log-shell solution as alpha -> 1 (its
1/(1-alpha) prefactor diverges), so orders at or above 0.99 are rejected;
and a constant temperature profile yields a nonzero flux because the
spatial operator of a constant is nonzero.  The intermediate flow-rate
relation printed between the flux law and the shell solution is
dimensionally inconsistent and is not implemented as an operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ab_core import NORMALIZATIONS, AlphaParam, SampledFunction, abr_derivative
from .errors import ConvergenceRangeError, DomainError
from .specfun import HyperParams, harmonic_number, hyper_3f2

ALPHA_MAX = 0.99

__all__ = ["ALPHA_MAX", "HeatShellSpec", "RadialProfile",
           "shell_temperature_drop", "heat_flux"]


@dataclass(frozen=True)
class HeatShellSpec:
    """Cylindrical shell geometry and material data.

    Radii in m (0 < r1 < r2), length in m, conductivity in W/(m K),
    heat rate in W, fractional order in (0, 1).
    """

    r1: float
    r2: float
    length: float
    k: float
    q_dot: float
    alpha: float
    b_norm: str = "unit"

    def __post_init__(self):
        if not 0.0 < self.r1 < self.r2:
            raise DomainError(f"need 0 < r1 < r2, got r1={self.r1}, r2={self.r2}")
        if self.length <= 0.0 or self.k <= 0.0:
            raise DomainError("length and conductivity must be positive")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.b_norm not in NORMALIZATIONS:
            raise DomainError(f"unknown normalization {self.b_norm!r}")


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Temperature samples on a uniform ascending radial grid, with the
    constant cross-section area entering the flux law."""

    r: np.ndarray
    temperature: np.ndarray
    alpha: float
    k: float
    area: float
    b_norm: str = "unit"

    def __post_init__(self):
        r = np.ascontiguousarray(self.r, dtype=float)
        temp = np.ascontiguousarray(self.temperature, dtype=float)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "temperature", temp)
        if r.ndim != 1 or r.size < 3:
            raise DomainError("radial grid needs at least 3 points")
        if temp.shape != r.shape:
            raise DomainError("temperature and radial grid lengths differ")
        steps = np.diff(r)
        if not (steps > 0).all():
            raise DomainError("radial grid must be strictly ascending")
        h = steps[0]
        if np.max(np.abs(steps - h)) > 1e-9 * max(1.0, abs(h)):
            raise DomainError("radial grid must be uniform")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.k <= 0.0 or self.area <= 0.0:
            raise DomainError("conductivity and area must be positive")
        if self.b_norm not in NORMALIZATIONS:
            raise DomainError(f"unknown normalization {self.b_norm!r}")


def shell_temperature_drop(spec: HeatShellSpec) -> float:
    """Temperature difference T1 - T2 across the shell (in the units of
    q_dot/(2 pi L k)), evaluated exactly as the model's closed form:

        dT = Q/(2 pi L k) {1 + a/(1-a) r2^(a-1)
             [a 3F2({1,1,1-a},{2,2}, r1/r2) r1 - (H(a) + ln(r1/r2)) r2]}

    Linear in q_dot; alpha is rejected at 0.99 and above because of the
    singular 1/(1-alpha) prefactor.
    """
    if spec.alpha >= ALPHA_MAX:
        raise ConvergenceRangeError(
            f"temperature-drop formula has a 1/(1-alpha) prefactor; "
            f"alpha={spec.alpha} is too close to 1 (limit {ALPHA_MAX})")
    a = spec.alpha
    ratio = spec.r1 / spec.r2
    f32 = hyper_3f2(HyperParams(upper=(1.0, 1.0, 1.0 - a), lower=(2.0, 2.0), x=ratio))
    bracket = a * f32 * spec.r1 - (harmonic_number(a) + math.log(ratio)) * spec.r2
    scale = spec.q_dot / (2.0 * math.pi * spec.length * spec.k)
    return scale * (1.0 + a / (1.0 - a) * spec.r2 ** (a - 1.0) * bracket)


def heat_flux(profile: RadialProfile) -> SampledFunction:
    """Radial heat-flow rate -k A D_r^alpha T (Riemann-Liouville-type
    derivative in r, lower terminal at the inner radius).

    A thin wrapper over the spatial operator: linear in the profile and
    matching ``abr_derivative`` exactly.
    """
    r = profile.r
    n = r.size - 1
    fs = SampledFunction(t0=float(r[0]), T=float(r[-1]), n=n,
                         values=profile.temperature)
    prm = AlphaParam(profile.alpha, profile.b_norm)
    out = abr_derivative(fs, prm)
    flux = -profile.k * profile.area * out.values
    return SampledFunction(t0=float(r[0]), T=float(r[-1]), n=n, values=flux)
