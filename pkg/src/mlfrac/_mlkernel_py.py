"""NumPy implementation of the Mittag-Leffler summation kernels.

This is the fallback backend; `_mlkernel` (Cython) implements the same two
entry points with identical semantics.  Both return a value array and a
certified absolute error estimate per element; an entry of ``inf`` in the
error array means the strategy does not certify that argument.
"""

from __future__ import annotations

import numpy as np

from . import _dd as dd

BACKEND_NAME = "numpy"

# error-model constants: per-term double-double rounding drift and the
# accuracy of the reciprocal-gamma coefficient tables
_DRIFT_PER_TERM = 5e-32
_TABLE_EPS = 3e-29
_TAIL_SAFETY = 10.0
_ASYM_SAFETY = 10.0
_TAIL_RATIO_MAX = 0.95


def series_sum(z, rat_h, rat_l, rg0_h, rg0_l, tol):
    """Power series sum_k z^k / Gamma(alpha k + beta) with dd accumulation.

    ``rat_h/rat_l`` hold r_k = Gamma(alpha(k-1)+beta)/Gamma(alpha k+beta) in
    double-double, so the running term obeys t_k = t_{k-1} * z * r_k.  When
    the coefficient table is exhausted before convergence the remaining tail
    is bounded geometrically (the term ratio is decreasing in k).
    """
    z = np.asarray(z, dtype=float)
    n = z.size
    kmax = rat_h.size
    vh = np.full(n, rg0_h)
    vl = np.full(n, rg0_l)
    th = np.full(n, rg0_h)
    tl = np.full(n, rg0_l)
    sumabs = np.abs(vh).copy()
    kdone = np.zeros(n)
    small_run = np.zeros(n, dtype=np.int8)
    active = np.ones(n, dtype=bool)
    last_at = np.zeros(n)

    with np.errstate(all="ignore"):
        for k in range(1, kmax + 1):
            if not active.any():
                break
            nh, nl = dd.dd_mul_d(th, tl, z)
            nh, nl = dd.dd_mul(nh, nl, rat_h[k - 1], rat_l[k - 1])
            th = np.where(active, nh, th)
            tl = np.where(active, nl, tl)
            ah, al = dd.dd_add(vh, vl, th, tl)
            vh = np.where(active, ah, vh)
            vl = np.where(active, al, vl)
            at = np.abs(th)
            sumabs = np.where(active, sumabs + at, sumabs)
            last_at = np.where(active, at, last_at)
            stop_thr = 1e-3 * tol * np.maximum(1.0, np.abs(vh))
            small = at <= stop_thr
            small_run = np.where(active & small, small_run + 1,
                                 np.where(active, 0, small_run))
            done = active & (small_run >= 2) & (k >= 2)
            kdone = np.where(done, float(k), kdone)
            active &= ~done

        kdone = np.where(active, float(kmax), kdone)
        tail = _TAIL_SAFETY * last_at
        if active.any():
            # table exhausted: term ratios are below |z| * rat[kmax-1] from
            # here on, so the tail is geometrically bounded when that is < 1
            r = np.abs(z) * rat_h[kmax - 1]
            geo = np.where(r < _TAIL_RATIO_MAX, last_at * r / (1.0 - r), np.inf)
            tail = np.where(active, _TAIL_SAFETY * geo, tail)

        val = vh + vl
        est = sumabs * (_DRIFT_PER_TERM * kdone + _TABLE_EPS) + tail
        err = np.where(np.isfinite(val) & np.isfinite(est), est, np.inf)
    return val, err


def asymp_sum(z, rg2, env, alpha, tol):
    """Algebraic large-argument expansion -sum_k z^-k / Gamma(beta - alpha k).

    ``rg2[k]`` holds the entire reciprocal gamma 1/Gamma(beta - alpha k) and
    ``env[k]`` a smooth positive envelope >= |rg2[k]| (reflection bound with
    the sine factor dropped); the k = 0 slots are unused.  Valid for z <= -1.
    Truncation decisions use the envelope, which decreases monotonically up
    to the genuine divergence point of the expansion; the first omitted
    envelope term gives the truncation estimate.  For alpha >= 1 an explicit
    bound on the exponentially small contribution is added.
    """
    z = np.asarray(z, dtype=float)
    n = z.size
    kmax = rg2.size - 1
    zi = 1.0 / z
    zp = np.ones(n)
    s = np.zeros(n)
    comp = np.zeros(n)
    sumabs = np.zeros(n)
    prev_env = np.full(n, np.inf)
    omit = np.full(n, np.inf)
    active = np.ones(n, dtype=bool)

    with np.errstate(all="ignore"):
        for k in range(1, kmax + 1):
            if not active.any():
                break
            zp = np.where(active, zp * zi, zp)
            t = -zp * rg2[k]
            ek = np.abs(zp) * env[k]
            grows = active & (ek >= prev_env) & (k >= 2)
            omit = np.where(grows, ek, omit)
            add = active & ~grows
            tt = np.where(add, t, 0.0)
            ns = s + tt
            comp = comp + np.where(np.abs(s) >= np.abs(tt), (s - ns) + tt, (tt - ns) + s)
            s = ns
            sumabs += np.where(add, np.abs(tt), 0.0)
            tiny = add & (ek <= 1e-3 * tol)
            omit = np.where(tiny, ek, omit)
            prev_env = np.where(add, ek, prev_env)
            active &= ~(grows | tiny)
        # ran off the end while still decreasing: last envelope term bounds
        omit = np.where(active, prev_env, omit)

        val = s + comp
        err = _ASYM_SAFETY * omit + 5e-16 * sumabs
        if alpha >= 0.9999:
            c = np.cos(np.pi / alpha)
            x1a = np.power(-z, 1.0 / alpha)
            err = err + (3.0 / alpha) * np.exp(np.minimum(c * x1a, 300.0))
        err = np.where(np.isfinite(val), err, np.inf)
    return val, err
