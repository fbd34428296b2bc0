# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Mittag-Leffler summation kernels.

Same contract as `_mlkernel_py`: per-element adaptive summation with a
certified absolute error estimate (inf where the strategy fails).
"""

from libc.math cimport fabs, cos, exp, fma, pow, isfinite, INFINITY, M_PI

import numpy as np

BACKEND_NAME = "compiled"

cdef double _DRIFT_PER_TERM = 5e-32
cdef double _TABLE_EPS = 3e-29
cdef double _TAIL_SAFETY = 10.0
cdef double _ASYM_SAFETY = 10.0
cdef double _TAIL_RATIO_MAX = 0.95

cdef struct dd:
    double hi
    double lo

cdef inline dd _two_sum(double a, double b) nogil:
    cdef dd r
    cdef double s = a + b
    cdef double bb = s - a
    r.hi = s
    r.lo = (a - (s - bb)) + (b - bb)
    return r

cdef inline dd _quick_two_sum(double a, double b) nogil:
    cdef dd r
    cdef double s = a + b
    r.hi = s
    r.lo = b - (s - a)
    return r

cdef inline dd _two_prod(double a, double b) nogil:
    # fma gives the exact product error in one instruction; numerically
    # identical to the Dekker split used by the numpy backend
    cdef dd r
    r.hi = a * b
    r.lo = fma(a, b, -r.hi)
    return r

cdef inline dd _dd_add(dd x, dd y) nogil:
    cdef dd s = _two_sum(x.hi, y.hi)
    cdef dd t = _two_sum(x.lo, y.lo)
    s.lo = s.lo + t.hi
    s = _quick_two_sum(s.hi, s.lo)
    s.lo = s.lo + t.lo
    return _quick_two_sum(s.hi, s.lo)

cdef inline dd _dd_mul(dd x, dd y) nogil:
    cdef dd p = _two_prod(x.hi, y.hi)
    p.lo = p.lo + (x.hi * y.lo + x.lo * y.hi)
    return _quick_two_sum(p.hi, p.lo)

cdef inline dd _dd_mul_d(dd x, double y) nogil:
    cdef dd p = _two_prod(x.hi, y)
    p.lo = p.lo + x.lo * y
    return _quick_two_sum(p.hi, p.lo)


def series_sum(double[::1] z, double[::1] rat_h, double[::1] rat_l,
               double rg0_h, double rg0_l, double tol):
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t kmax = rat_h.shape[0]
    val_arr = np.empty(n)
    err_arr = np.empty(n)
    cdef double[::1] val = val_arr
    cdef double[::1] err = err_arr
    cdef Py_ssize_t i, k
    cdef dd v, t, rat
    cdef double zz, sumabs, at, stop_thr, last_at, vv, est, r, geo, tail
    cdef int small_run, converged
    cdef double kdone

    for i in range(n):
        zz = z[i]
        v.hi = rg0_h
        v.lo = rg0_l
        t.hi = rg0_h
        t.lo = rg0_l
        sumabs = fabs(rg0_h)
        small_run = 0
        converged = 0
        last_at = 0.0
        kdone = kmax
        for k in range(1, kmax + 1):
            t = _dd_mul_d(t, zz)
            rat.hi = rat_h[k - 1]
            rat.lo = rat_l[k - 1]
            t = _dd_mul(t, rat)
            v = _dd_add(v, t)
            at = fabs(t.hi)
            sumabs = sumabs + at
            last_at = at
            stop_thr = 1e-3 * tol * max(1.0, fabs(v.hi))
            if at <= stop_thr:
                small_run = small_run + 1
            else:
                small_run = 0
            if small_run >= 2 and k >= 2:
                converged = 1
                kdone = k
                break
        tail = _TAIL_SAFETY * last_at
        if not converged:
            r = fabs(zz) * rat_h[kmax - 1]
            if r < _TAIL_RATIO_MAX:
                geo = last_at * r / (1.0 - r)
            else:
                geo = INFINITY
            tail = _TAIL_SAFETY * geo
        vv = v.hi + v.lo
        est = sumabs * (_DRIFT_PER_TERM * kdone + _TABLE_EPS) + tail
        if isfinite(vv) and isfinite(est):
            val[i] = vv
            err[i] = est
        else:
            val[i] = vv
            err[i] = INFINITY
    return val_arr, err_arr


def asymp_sum(double[::1] z, double[::1] rg2, double[::1] env,
              double alpha, double tol):
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t kmax = rg2.shape[0] - 1
    val_arr = np.empty(n)
    err_arr = np.empty(n)
    cdef double[::1] val = val_arr
    cdef double[::1] err = err_arr
    cdef Py_ssize_t i, k
    cdef double zz, zi, zp, s, comp, sumabs, prev_env, omit, t, ek, ns, tt, e
    cdef double c, x1a
    cdef int stopped

    for i in range(n):
        zz = z[i]
        zi = 1.0 / zz
        zp = 1.0
        s = 0.0
        comp = 0.0
        sumabs = 0.0
        prev_env = INFINITY
        omit = INFINITY
        stopped = 0
        for k in range(1, kmax + 1):
            zp = zp * zi
            t = -zp * rg2[k]
            ek = fabs(zp) * env[k]
            if k >= 2 and ek >= prev_env:
                omit = ek
                stopped = 1
                break
            # Neumaier-compensated accumulation
            tt = t
            ns = s + tt
            if fabs(s) >= fabs(tt):
                comp = comp + ((s - ns) + tt)
            else:
                comp = comp + ((tt - ns) + s)
            s = ns
            sumabs = sumabs + fabs(tt)
            prev_env = ek
            if ek <= 1e-3 * tol:
                omit = ek
                stopped = 1
                break
        if not stopped:
            omit = prev_env
        val[i] = s + comp
        e = _ASYM_SAFETY * omit + 5e-16 * sumabs
        if alpha >= 0.9999:
            c = cos(M_PI / alpha)
            x1a = pow(-zz, 1.0 / alpha)
            e = e + (3.0 / alpha) * exp(min(c * x1a, 300.0))
        if not isfinite(val[i]):
            e = INFINITY
        err[i] = e
    return val_arr, err_arr
