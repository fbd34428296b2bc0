"""Built-in test-function catalog shared by the CLI, the transform checks
and the verification suite.

Catalog names follow the CLI syntax: ``const:<c>``, ``poly:<c0,c1,...>``,
``exp:<rate>``, ``sin:<omega>``.  Every entry carries analytic first and
second derivatives and, where used by the Laplace checks, the closed-form
transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .ab_core import SampledFunction
from .errors import DomainError


@dataclass(frozen=True)
class CatalogFunction:
    name: str
    f: Callable
    df: Callable
    d2f: Callable
    laplace: Optional[Callable] = None  # analytic L{f}(p), when known

    def sample(self, t0: float, T: float, n: int) -> SampledFunction:
        return SampledFunction.from_callable(self.f, t0, T, n,
                                             deriv=self.df, deriv2=self.d2f)


def _const(c: float) -> CatalogFunction:
    return CatalogFunction(
        name=f"const:{c:g}",
        f=lambda t, c=c: c + 0.0 * t,
        df=lambda t: 0.0 * t,
        d2f=lambda t: 0.0 * t,
        laplace=lambda p, c=c: c / p,
    )


def _poly(coeffs) -> CatalogFunction:
    coeffs = tuple(float(c) for c in coeffs)

    def f(t, cs=coeffs):
        return sum(c * t ** k for k, c in enumerate(cs)) + 0.0 * t

    def df(t, cs=coeffs):
        return sum(k * c * t ** (k - 1) for k, c in enumerate(cs) if k >= 1) + 0.0 * t

    def d2f(t, cs=coeffs):
        return sum(k * (k - 1) * c * t ** (k - 2) for k, c in enumerate(cs) if k >= 2) + 0.0 * t

    def lap(p, cs=coeffs):
        return sum(c * math.factorial(k) / p ** (k + 1) for k, c in enumerate(cs))

    name = "poly:" + ",".join(f"{c:g}" for c in coeffs)
    return CatalogFunction(name=name, f=f, df=df, d2f=d2f, laplace=lap)


def _exp(rate: float) -> CatalogFunction:
    return CatalogFunction(
        name=f"exp:{rate:g}",
        f=lambda t, r=rate: np.exp(r * t),
        df=lambda t, r=rate: r * np.exp(r * t),
        d2f=lambda t, r=rate: r * r * np.exp(r * t),
        laplace=(lambda p, r=rate: 1.0 / (p - r)),
    )


def _sin(omega: float) -> CatalogFunction:
    return CatalogFunction(
        name=f"sin:{omega:g}",
        f=lambda t, w=omega: np.sin(w * t),
        df=lambda t, w=omega: w * np.cos(w * t),
        d2f=lambda t, w=omega: -w * w * np.sin(w * t),
        laplace=lambda p, w=omega: w / (p * p + w * w),
    )


def parse_function(spec: str) -> CatalogFunction:
    """Parse a catalog name like ``poly:0,1`` into a CatalogFunction."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "const":
            return _const(float(arg))
        if kind == "poly":
            return _poly([float(v) for v in arg.split(",") if v != ""])
        if kind == "exp":
            return _exp(float(arg))
        if kind == "sin":
            return _sin(float(arg))
    except ValueError as exc:
        raise DomainError(f"malformed function spec {spec!r}: {exc}") from None
    raise DomainError(f"unknown function kind {kind!r} (use const/poly/exp/sin)")


def transform_catalog():
    """The default catalog for Laplace-identity checks: 1, t, t^2, e^-t."""
    return [_const(1.0), _poly((0.0, 1.0)), _poly((0.0, 0.0, 1.0)), _exp(-1.0)]


def relation_catalog():
    """Smooth functions for the derivative-relation and bound checks."""
    return [
        _const(1.0),
        _const(-3.7),
        _poly((0.0, 1.0)),
        _poly((0.0, 0.0, 1.0)),
        _poly((0.5, 0.0, -2.0, 1.0)),
        _exp(-1.0),
        _exp(0.5),
        _sin(1.0),
    ]
