"""Certified evaluation of the two-parameter Mittag-Leffler function.

Two strategies cover the real line:

* power series in double-double with a running rounding/tail certificate
  (small and moderate arguments);
* the algebraic expansion in 1/z for large negative arguments, truncated
  at the first growing term.

Every evaluation carries an absolute error estimate.  If neither strategy
certifies the requested tolerance the argument is rejected with
:class:`ConvergenceRangeError` instead of returning a doubtful value.
The two certified regions overlap for all alpha in (0, 1], so rejections
only occur outside the supported envelope (e.g. huge positive arguments
whose value overflows, or alpha near 2 with very negative z).
"""

from __future__ import annotations

import math

import numpy as np

from . import _backend, _dd
from .errors import ConvergenceRangeError, DomainError

_GAMMA_CAP = _dd.GAMMA_ARG_CAP
_KMAX_CAP = 6000
_SERIES_X_CUT = 42.0     # series attempted when |z|^(1/alpha) is below this
_ASYM_KMAX = 64
_TOL_FLOOR = 1e-13
_BETA_CAP = 150.0

_series_tables: dict = {}
_asym_tables: dict = {}


def _series_table(alpha: float, beta: float):
    key = (alpha, beta)
    tab = _series_tables.get(key)
    if tab is None:
        kmax = int((_GAMMA_CAP - beta) / alpha)
        kmax = max(4, min(kmax, _KMAX_CAP))
        # arguments alpha*k + beta are computed exactly in dd; rounding them
        # in double would wreck the cancellation budget of the series
        karr = np.arange(kmax + 1, dtype=float)
        xh, xl = _dd.two_prod(alpha, karr)
        xh, xl = _dd.dd_add(xh, xl, beta, 0.0)
        gh, gl = _dd.rgamma_dd(xh, xl)
        rat_h, rat_l = _dd.dd_div(gh[1:], gl[1:], gh[:-1], gl[:-1])
        tab = (
            float(gh[0]),
            float(gl[0]),
            np.ascontiguousarray(rat_h),
            np.ascontiguousarray(rat_l),
        )
        if len(_series_tables) > 64:
            _series_tables.clear()
        _series_tables[key] = tab
    return tab


def _sinpi(x: float) -> float:
    n = round(x)
    r = x - n
    s = math.sin(math.pi * r)
    return s if n % 2 == 0 else -s


def _recip_gamma_real(x: float) -> float:
    """Entire function 1/Gamma(x) for real x, in double precision."""
    if x > 0.5:
        if x > 171.6:
            return 0.0
        return 1.0 / math.gamma(x)
    s = _sinpi(x)
    if s == 0.0:
        return 0.0
    try:
        g = math.gamma(1.0 - x)
    except OverflowError:
        return math.copysign(math.inf, s)
    return s * g / math.pi


def _asym_table(alpha: float, beta: float):
    key = (alpha, beta)
    tab = _asym_tables.get(key)
    if tab is None:
        rg2 = np.zeros(_ASYM_KMAX + 1)
        env = np.zeros(_ASYM_KMAX + 1)
        for k in range(1, _ASYM_KMAX + 1):
            x = beta - alpha * k
            rg2[k] = _recip_gamma_real(x)
            if x > 0.5:
                env[k] = abs(rg2[k])
            else:
                try:
                    env[k] = math.gamma(1.0 - x) / math.pi
                except OverflowError:
                    env[k] = math.inf
        tab = (rg2, env)
        if len(_asym_tables) > 64:
            _asym_tables.clear()
        _asym_tables[key] = tab
    return tab


def ml_eval_array(alpha: float, beta: float, z, tol: float = 1e-12,
                  return_err: bool = False):
    """E_{alpha,beta} elementwise over a 1-d array of real arguments.

    ``tol`` is the certified absolute tolerance (relative for results with
    magnitude above one).  Requires alpha in (0, 2] and beta in (0, 150].
    """
    alpha = float(alpha)
    beta = float(beta)
    if not 0.0 < alpha <= 2.0:
        raise DomainError(f"mittag-leffler order must be in (0, 2], got {alpha}")
    if not 0.0 < beta <= _BETA_CAP:
        raise DomainError(f"mittag-leffler second parameter must be in (0, {_BETA_CAP}], got {beta}")
    tol = max(float(tol), _TOL_FLOOR)

    z = np.ascontiguousarray(z, dtype=float)
    if z.ndim != 1:
        raise ValueError("ml_eval_array expects a 1-d array")
    if not np.isfinite(z).all():
        raise DomainError("mittag-leffler argument must be finite")

    rg0_h, rg0_l, rat_h, rat_l = _series_table(alpha, beta)
    val = np.full(z.shape, np.nan)
    err = np.full(z.shape, np.inf)

    zero = z == 0.0
    val[zero] = rg0_h
    err[zero] = 1e-31

    with np.errstate(all="ignore"):
        x_scaled = np.where(z < 0.0, np.abs(z) ** (1.0 / alpha), 0.0)
        ser = ~zero & ((z > 0.0) | (x_scaled <= _SERIES_X_CUT))
        if ser.any():
            v, e = _backend.series_sum(z[ser], rat_h, rat_l, rg0_h, rg0_l, tol)
            val[ser] = v
            err[ser] = e

        # the relative widening of the gate is only safe where the series has
        # no cancellation (z > 0, so sum(|t|) = |value| and val is trustworthy)
        scale = np.where(z > 0.0, np.maximum(1.0, np.abs(val)), 1.0)
        gate = err <= tol * scale
        asym = ~zero & (z <= -1.0) & ~gate
        if asym.any():
            rg2, env = _asym_table(alpha, beta)
            va, ea = _backend.asymp_sum(z[asym], rg2, env, alpha, tol)
            take = ea < err[asym]
            sub_v = val[asym]
            sub_e = err[asym]
            sub_v[take] = va[take]
            sub_e[take] = ea[take]
            val[asym] = sub_v
            err[asym] = sub_e

        scale = np.where(z > 0.0, np.maximum(1.0, np.abs(val)), 1.0)
    bad = ~(err <= tol * scale)
    if bad.any():
        i = int(np.argmax(bad))
        raise ConvergenceRangeError(
            f"E_{{{alpha:g},{beta:g}}}({z[i]:g}) not certified to tol={tol:g} "
            f"(estimated error {err[i]:.2e}); argument outside the supported range"
        )
    if return_err:
        return val, err
    return val


def ml_eval(alpha: float, beta: float, z: float, tol: float = 1e-12) -> float:
    """Scalar E_{alpha,beta}(z)."""
    return float(ml_eval_array(alpha, beta, np.array([float(z)]), tol)[0])
