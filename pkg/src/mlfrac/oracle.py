"""Extended-precision reference values via the stdlib ``decimal`` module.

These brute-force evaluations are the independent side of every dual-route
check in the test suite.  They deliberately share no code with the fast
implementation: plain series summed in 50+ digit decimal arithmetic, with
gamma supplied by a Spouge approximation evaluated in decimal (the high
working precision absorbs the cancellation that rules Spouge out for the
double-double path).
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext

from .errors import ConvergenceRangeError

PREC = 60

_PI_STR = ("3.14159265358979323846264338327950288419716939937510"
           "582097494459230781640628620899862803482534211706798")

_SPOUGE_A = 64


def _pi() -> Decimal:
    return Decimal(_PI_STR)


def _spouge_coeffs():
    with localcontext() as ctx:
        ctx.prec = PREC + 30
        a = Decimal(_SPOUGE_A)
        coeffs = [(2 * _pi()).sqrt()]
        for k in range(1, _SPOUGE_A):
            base = a - k
            c = base ** (k - 1) * base.sqrt() * base.exp() / math.factorial(k - 1)
            if k % 2 == 0:
                c = -c
            coeffs.append(c)
    return coeffs


_COEFFS = _spouge_coeffs()


def gamma_ref(x) -> Decimal:
    """Gamma(x) for x > 0 to ~PREC-10 significant digits."""
    with localcontext() as ctx:
        ctx.prec = PREC + 20
        z = Decimal(x) - 1
        if z <= -1:
            raise ValueError(f"gamma_ref requires x > 0, got {x}")
        s = _COEFFS[0]
        for k in range(1, _SPOUGE_A):
            s += _COEFFS[k] / (z + k)
        za = z + _SPOUGE_A
        expo = (z + Decimal("0.5")) * za.ln() - za
        return +(expo.exp() * s)


def ml_ref(alpha, beta, z, max_terms: int = 20000) -> Decimal:
    """Brute-force series for E_{alpha,beta}(z); raises when the working
    precision cannot absorb the term growth."""
    with localcontext() as ctx:
        ctx.prec = PREC
        a = Decimal(alpha)
        b = Decimal(beta)
        zz = Decimal(z)
        s = Decimal(0)
        budget = Decimal(10) ** 20
        tiny_run = 0
        for k in range(max_terms):
            t = zz ** k / gamma_ref(a * k + b)
            s += t
            if abs(t) > budget:
                raise ConvergenceRangeError(
                    f"ml_ref: term growth exceeds precision budget at alpha={alpha}, z={z}"
                )
            if abs(t) <= Decimal(10) ** (-(PREC - 8)) * max(Decimal(1), abs(s)):
                tiny_run += 1
                if tiny_run >= 2 and k >= 2:
                    return +s
            else:
                tiny_run = 0
        raise ConvergenceRangeError(f"ml_ref: no convergence within {max_terms} terms")


def hyper3f2_ref(upper, lower, x) -> Decimal:
    """3F2 series in decimal; requires |x| < 1."""
    with localcontext() as ctx:
        ctx.prec = PREC
        a1, a2, a3 = (Decimal(v) for v in upper)
        b1, b2 = (Decimal(v) for v in lower)
        xx = Decimal(x)
        if not abs(xx) < 1:
            raise ConvergenceRangeError("hyper3f2_ref requires |x| < 1")
        term = Decimal(1)
        s = Decimal(1)
        for k in range(2000000):
            term *= (a1 + k) * (a2 + k) * (a3 + k) * xx / ((b1 + k) * (b2 + k) * (1 + k))
            if term == 0:
                break
            s += term
            if abs(term) <= Decimal(10) ** (-(PREC - 5)) * abs(s):
                break
        return +s


_EM_N = 4000


def harmonic_ref(alpha) -> Decimal:
    """H(alpha) = sum_{k>=1} alpha / (k (k + alpha)) with an Euler-Maclaurin
    tail; valid for alpha > -1."""
    with localcontext() as ctx:
        ctx.prec = PREC
        a = Decimal(alpha)
        s = Decimal(0)
        for k in range(1, _EM_N + 1):
            s += a / (k * (k + a))
        m = Decimal(_EM_N + 1)

        def g(x):
            return 1 / x - 1 / (x + a)

        def g1(x):
            return -1 / x ** 2 + 1 / (x + a) ** 2

        def g3(x):
            return -6 / x ** 4 + 6 / (x + a) ** 4

        def g5(x):
            return -120 / x ** 6 + 120 / (x + a) ** 6

        tail = (1 + a / m).ln() + g(m) / 2 - g1(m) / 12 + g3(m) / 720 - g5(m) / 30240
        return +(s + tail)


def li2_ref(x) -> Decimal:
    """Dilogarithm Li_2(x) for |x| < 1 by direct series."""
    with localcontext() as ctx:
        ctx.prec = PREC
        xx = Decimal(x)
        if not abs(xx) < 1:
            raise ConvergenceRangeError("li2_ref requires |x| < 1")
        s = Decimal(0)
        p = Decimal(1)
        for k in range(1, 2000000):
            p *= xx
            t = p / (k * k)
            s += t
            if abs(t) <= Decimal(10) ** (-(PREC - 5)) * max(Decimal(1), abs(s)):
                break
        return +s


def heat_drop_ref(r1, r2, length, conductivity, q_dot, alpha) -> Decimal:
    """Term-by-term decimal evaluation of the cylindrical-shell temperature
    drop formula (same algebraic shape as heat.shell_temperature_drop)."""
    with localcontext() as ctx:
        ctx.prec = PREC
        a = Decimal(alpha)
        rr1 = Decimal(r1)
        rr2 = Decimal(r2)
        ratio = rr1 / rr2
        f = hyper3f2_ref([1, 1, 1 - a], [2, 2], ratio)
        h = harmonic_ref(a)
        bracket = a * f * rr1 - (h + ratio.ln()) * rr2
        r2pow = ((a - 1) * rr2.ln()).exp()
        scale = Decimal(q_dot) / (2 * _pi() * Decimal(length) * Decimal(conductivity))
        return +(scale * (1 + a / (1 - a) * r2pow * bracket))
