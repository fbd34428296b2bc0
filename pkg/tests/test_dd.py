"""Double-double building blocks against the decimal reference."""

import math
from decimal import Decimal, localcontext

import numpy as np
import pytest

from mlfrac import _dd as dd
from mlfrac import oracle


def _dd_to_decimal(hi, lo):
    return Decimal(float(hi)) + Decimal(float(lo))


def test_two_sum_exact():
    a, b = 1e16, 1.0 + 2.0 ** -30
    s, e = dd.two_sum(a, b)
    assert Decimal(s) + Decimal(e) == Decimal(a) + Decimal(b)


def test_two_prod_exact():
    rng = np.random.default_rng(7)
    for _ in range(200):
        a = float(rng.normal()) * 10.0 ** rng.integers(-20, 20)
        b = float(rng.normal()) * 10.0 ** rng.integers(-20, 20)
        p, e = dd.two_prod(a, b)
        assert Decimal(p) + Decimal(e) == Decimal(a) * Decimal(b)


def test_dd_mul_div_roundtrip():
    rng = np.random.default_rng(11)
    x = rng.uniform(0.5, 2.0, 64)
    y = rng.uniform(0.5, 2.0, 64)
    ph, pl = dd.dd_mul(x, np.zeros_like(x), y, np.zeros_like(y))
    qh, ql = dd.dd_div(ph, pl, y, np.zeros_like(y))
    with localcontext() as ctx:
        ctx.prec = 50
        for i in range(x.size):
            back = _dd_to_decimal(qh[i], ql[i])
            assert abs(back - Decimal(x[i])) < Decimal("1e-30")


@pytest.mark.parametrize("x", [-700.0, -88.0, -3.25, -0.1, 0.0, 0.7, 12.5, 650.0])
def test_dd_exp(x):
    h, l = dd.dd_exp(np.float64(x), np.float64(0.0))
    with localcontext() as ctx:
        ctx.prec = 50
        ref = Decimal(x).exp()
        err = abs(_dd_to_decimal(h, l) - ref)
    # near the underflow edge the low limb goes subnormal; only the
    # absolute error is meaningful there
    assert err < max(Decimal("1e-28") * abs(ref), Decimal("1e-318"))


@pytest.mark.parametrize("x", [1e-12, 0.3, 0.9999, 1.0, 1.0001, 7.0, 1e8, 1e300])
def test_dd_ln(x):
    h, l = dd.dd_ln(np.float64(x), np.float64(0.0))
    with localcontext() as ctx:
        ctx.prec = 50
        ref = Decimal(x).ln()
        err = abs(_dd_to_decimal(h, l) - ref)
    assert err < Decimal("1e-28") * max(1, abs(ref))


def test_rgamma_against_decimal_oracle():
    xs = np.concatenate([np.linspace(0.02, 2.0, 23), np.linspace(2.5, 60.0, 31)])
    hs, ls = dd.rgamma_dd(xs)
    with localcontext() as ctx:
        ctx.prec = 50
        for x, h, l in zip(xs, hs, ls):
            ref = 1 / oracle.gamma_ref(float(x))
            rel = abs((_dd_to_decimal(h, l) - ref) / ref)
            assert rel < Decimal("1e-28"), f"x={x}"


def test_rgamma_exact_integers():
    hs, ls = dd.rgamma_dd(np.array([1.0, 2.0, 3.0, 5.0, 8.0]))
    assert hs[0] == 1.0 and hs[1] == 1.0
    assert hs[2] == 0.5
    assert math.isclose(hs[3], 1.0 / 24.0, rel_tol=1e-15)
    assert math.isclose(hs[4], 1.0 / 5040.0, rel_tol=1e-15)


def test_rgamma_dd_argument():
    # dd-accurate arguments alpha*k + beta must be honored beyond double
    alpha, k, beta = 0.9241703720908385, 40, 1.0
    xh, xl = dd.two_prod(alpha, float(k))
    xh, xl = dd.dd_add(xh, xl, beta, 0.0)
    h, l = dd.rgamma_dd(np.array([xh]), np.array([xl]))
    with localcontext() as ctx:
        ctx.prec = 60
        arg = Decimal(alpha) * k + 1
        ref = 1 / oracle.gamma_ref(arg)
        rel = abs((_dd_to_decimal(h[0], l[0]) - ref) / ref)
    assert rel < Decimal("1e-27")
