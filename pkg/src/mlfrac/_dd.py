"""Double-double (~31 significant digits) arithmetic helpers.

All operations are elementwise and work identically on python floats and
numpy float64 arrays.  A value x is represented as an unevaluated sum
(hi, lo) with |lo| <= 0.5 ulp(hi).  Only what the Mittag-Leffler engine
needs is implemented: +, *, /, exp, ln, and a Spouge-type reciprocal
gamma used to build series coefficient tables.
"""

from __future__ import annotations

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1
# ln 2 as a double-double constant
LN2_HI = 0.6931471805599453
LN2_LO = 2.3190468138462996e-17

GAMMA_ARG_CAP = 170.0  # largest gamma argument used in coefficient tables


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    """Requires |a| >= |b| (or b == 0)."""
    s = a + b
    return s, b - (s - a)


def two_prod(a, b):
    p = a * b
    ca = _SPLIT * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLIT * b
    bhi = cb - (cb - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def dd_add(xh, xl, yh, yl):
    sh, se = two_sum(xh, yh)
    th, te = two_sum(xl, yl)
    se = se + th
    sh, se = quick_two_sum(sh, se)
    se = se + te
    return quick_two_sum(sh, se)


def dd_mul(xh, xl, yh, yl):
    ph, pe = two_prod(xh, yh)
    pe = pe + (xh * yl + xl * yh)
    return quick_two_sum(ph, pe)


def dd_mul_d(xh, xl, y):
    """dd * plain double."""
    ph, pe = two_prod(xh, y)
    pe = pe + xl * y
    return quick_two_sum(ph, pe)


def dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    th, tl = dd_mul_d(yh, yl, q1)
    rh, rl = dd_add(xh, xl, -th, -tl)
    q2 = rh / yh
    th, tl = dd_mul_d(yh, yl, q2)
    rh, rl = dd_add(rh, rl, -th, -tl)
    q3 = rh / yh
    qh, ql = quick_two_sum(q1, q2)
    return dd_add(qh, ql, q3, np.zeros_like(q3) if isinstance(q3, np.ndarray) else 0.0)


def _inv_factorials(count):
    """(hi, lo) arrays of 1/k! for k = 0..count-1."""
    hi = np.empty(count)
    lo = np.empty(count)
    fh, fl = 1.0, 0.0  # k!
    hi[0], lo[0] = 1.0, 0.0
    for k in range(1, count):
        fh, fl = dd_mul_d(fh, fl, float(k))
        ih, il = dd_div(1.0, 0.0, fh, fl)
        hi[k], lo[k] = ih, il
    return hi, lo


_EXP_N = 26
_EXP_CH, _EXP_CL = _inv_factorials(_EXP_N + 1)

# 1/(2j+1) for the atanh series of ln
_ATH_N = 23
_ATH_CH = np.empty(_ATH_N + 1)
_ATH_CL = np.empty(_ATH_N + 1)
for _j in range(_ATH_N + 1):
    _h, _l = dd_div(1.0, 0.0, float(2 * _j + 1), 0.0)
    _ATH_CH[_j], _ATH_CL[_j] = _h, _l
del _h, _l, _j


def dd_exp(xh, xl):
    """exp of a dd value; |x| up to ~700. Relative error ~1e-31 * (1 + |x|)."""
    m = np.rint(xh * (1.0 / LN2_HI))
    ph, pe = two_prod(m, LN2_HI)
    rh, rl = dd_add(xh, xl, -ph, -pe)
    ph, pe = two_prod(m, LN2_LO)
    rh, rl = dd_add(rh, rl, -ph, -pe)
    # Taylor of exp on |r| <= 0.35, Horner in dd
    sh = np.full_like(np.asarray(rh, dtype=float), _EXP_CH[_EXP_N])
    sl = np.full_like(sh, _EXP_CL[_EXP_N])
    for k in range(_EXP_N - 1, -1, -1):
        sh, sl = dd_mul(sh, sl, rh, rl)
        sh, sl = dd_add(sh, sl, _EXP_CH[k], _EXP_CL[k])
    mi = np.asarray(m, dtype=np.int64)
    return np.ldexp(sh, mi), np.ldexp(sl, mi)


def dd_ln(xh, xl):
    """ln of a dd value, x > 0."""
    f, e = np.frexp(np.asarray(xh, dtype=float))
    low = f < 0.7071067811865476
    f = np.where(low, 2.0 * f, f)
    e = (e - low).astype(np.int64)
    fl = np.ldexp(np.asarray(xl, dtype=float), -e)
    nh, nl = dd_add(f, fl, -1.0, 0.0)
    dh, dl = dd_add(f, fl, 1.0, 0.0)
    wh, wl = dd_div(nh, nl, dh, dl)
    w2h, w2l = dd_mul(wh, wl, wh, wl)
    sh = np.full_like(f, _ATH_CH[_ATH_N])
    sl = np.full_like(f, _ATH_CL[_ATH_N])
    for j in range(_ATH_N - 1, -1, -1):
        sh, sl = dd_mul(sh, sl, w2h, w2l)
        sh, sl = dd_add(sh, sl, _ATH_CH[j], _ATH_CL[j])
    sh, sl = dd_mul(sh, sl, wh, wl)          # atanh(w)
    sh, sl = 2.0 * sh, 2.0 * sl              # ln f
    ef = e.astype(float)
    ph, pe = two_prod(ef, LN2_HI)
    sh, sl = dd_add(sh, sl, ph, pe)
    ph, pe = two_prod(ef, LN2_LO)
    return dd_add(sh, sl, ph, pe)


# ---------------------------------------------------------------------------
# Reciprocal gamma: recurrence shift to x >= 30, then Stirling series.
# Unlike Spouge-type sums this has no internal cancellation, so the full
# double-double accuracy survives (~1e-30 relative over (0, 170]).
# ---------------------------------------------------------------------------

_SHIFT = 30.0

# B_{2n} / (2n (2n-1)) for the Stirling series, exact rationals split into dd
_STIRLING_FRACTIONS = (
    (1, 12), (-1, 360), (1, 1260), (-1, 1680), (1, 1188),
    (-691, 360360), (1, 156), (-3617, 122400), (43867, 244188),
    (-174611, 125400), (854513, 63756), (-236364091, 1506960),
    (8553103, 3900),
)


def _fraction_dd(num, den):
    from fractions import Fraction

    f = Fraction(num, den)
    hi = float(f)
    lo = float(f - Fraction(hi))
    return hi, lo


_STIR_CH = np.array([_fraction_dd(n, d)[0] for n, d in _STIRLING_FRACTIONS])
_STIR_CL = np.array([_fraction_dd(n, d)[1] for n, d in _STIRLING_FRACTIONS])

# 0.5*ln(2*pi) as dd, derived from the dd representation of 2*pi
_TWO_PI_HI = 6.283185307179586
_TWO_PI_LO = 2.4492935982947064e-16
_hl = dd_ln(np.float64(_TWO_PI_HI), np.float64(_TWO_PI_LO))
HALF_LN_2PI_HI = 0.5 * float(_hl[0])
HALF_LN_2PI_LO = 0.5 * float(_hl[1])
del _hl


def rgamma_dd(x, xl=None):
    """1/Gamma of a dd argument, 0 < x <= GAMMA_ARG_CAP (elementwise)."""
    x = np.asarray(x, dtype=float)
    # rising product P = x (x+1) ... (x+m-1) so that y = x + m >= _SHIFT
    ph = np.ones_like(x)
    pl = np.zeros_like(x)
    yh = x.copy()
    yl = np.zeros_like(x) if xl is None else np.asarray(xl, dtype=float).copy()
    for _ in range(int(_SHIFT)):
        active = yh < _SHIFT
        if not active.any():
            break
        nh, nl = dd_mul(ph, pl, yh, yl)
        ph = np.where(active, nh, ph)
        pl = np.where(active, nl, pl)
        nh, nl = dd_add(yh, yl, 1.0, 0.0)
        yh = np.where(active, nh, yh)
        yl = np.where(active, nl, yl)
    # Stirling: ln Gamma(y) = (y - 1/2) ln y - y + ln(2 pi)/2 + sum c_n y^(1-2n)
    lh, ll = dd_ln(yh, yl)
    ah, al = dd_add(yh, yl, -0.5, 0.0)
    gh, gl = dd_mul(ah, al, lh, ll)
    gh, gl = dd_add(gh, gl, -yh, -yl)
    gh, gl = dd_add(gh, gl, HALF_LN_2PI_HI, HALF_LN_2PI_LO)
    ih, il = dd_div(np.ones_like(x), np.zeros_like(x), yh, yl)     # 1/y
    wh, wl = dd_mul(ih, il, ih, il)                                # 1/y^2
    n_last = len(_STIRLING_FRACTIONS) - 1
    sh = np.full_like(x, _STIR_CH[n_last])
    sl = np.full_like(x, _STIR_CL[n_last])
    for n in range(n_last - 1, -1, -1):
        sh, sl = dd_mul(sh, sl, wh, wl)
        sh, sl = dd_add(sh, sl, _STIR_CH[n], _STIR_CL[n])
    sh, sl = dd_mul(sh, sl, ih, il)
    gh, gl = dd_add(gh, gl, sh, sl)                                # ln Gamma(y)
    vh, vl = dd_exp(-gh, -gl)                                      # 1/Gamma(y)
    return dd_mul(vh, vl, ph, pl)
