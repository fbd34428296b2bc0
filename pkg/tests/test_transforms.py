"""Laplace machinery: quadrature against known transforms, closed forms,
and the end-to-end identity checks."""

import math

import numpy as np
import pytest

from mlfrac._catalog import parse_function, transform_catalog
from mlfrac.ab_core import AlphaParam, SampledFunction, abc_derivative
from mlfrac.errors import DomainError, TruncationWarning
from mlfrac.transforms import (TransformSample, abc_laplace_closed,
                               abr_laplace_closed, numerical_laplace,
                               relation_term_laplace, verify_transforms)


class TestNumericalLaplace:
    def test_constant(self):
        assert numerical_laplace(lambda t: 1.0 + 0.0 * t, 2.0, t_max=20.0) == pytest.approx(0.5, abs=1e-9)

    def test_ramp(self):
        assert numerical_laplace(lambda t: t, 1.0, t_max=40.0) == pytest.approx(1.0, abs=1e-8)

    def test_decay(self):
        v = numerical_laplace(lambda t: np.exp(-t), 1.0, t_max=40.0, tol=1e-8)
        assert v == pytest.approx(0.5, abs=1e-8)

    def test_sampled_input(self):
        f = SampledFunction.from_callable(lambda t: t, 0.0, 40.0, 4096)
        assert numerical_laplace(f, 1.0) == pytest.approx(1.0, abs=1e-6)

    def test_linearity(self):
        rng = np.random.default_rng(2)
        v1 = rng.standard_normal(513)
        v2 = rng.standard_normal(513)
        mk = lambda v: SampledFunction(0.0, 10.0, 512, v)
        lhs = numerical_laplace(mk(3.0 * v1 - 0.5 * v2), 1.0, tol=1.0)
        rhs = 3.0 * numerical_laplace(mk(v1), 1.0, tol=1.0) - 0.5 * numerical_laplace(mk(v2), 1.0, tol=1.0)
        assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_catalog_transforms(self):
        for entry in transform_catalog():
            for p in (0.5, 1.0, 2.0, 4.0):
                t_max = min(60.0, max(10.0, 45.0 / p))
                num = numerical_laplace(entry.f, p, t_max=t_max, tol=1e-8)
                assert num == pytest.approx(entry.laplace(p), abs=1e-6, rel=1e-6), (entry.name, p)

    def test_truncation_warning(self):
        with pytest.warns(TruncationWarning):
            numerical_laplace(lambda t: 1.0 + 0.0 * t, 0.5, t_max=2.0, tol=1e-10)

    def test_requires_positive_p(self):
        with pytest.raises(DomainError):
            numerical_laplace(lambda t: t, 0.0, t_max=1.0)

    def test_callable_needs_t_max(self):
        with pytest.raises(DomainError):
            numerical_laplace(lambda t: t, 1.0)


class TestClosedForms:
    def test_abc_zero(self):
        assert abc_laplace_closed(0.0, 0.0, 3.0, AlphaParam(0.4)) == 0.0

    def test_abc_ramp_exact_value(self):
        # f(t) = t: L{f} = 1 at p = 1; result is exactly 1
        assert abc_laplace_closed(1.0, 0.0, 1.0, AlphaParam(0.5)) == 1.0

    def test_abc_constant_vanishes(self):
        p = AlphaParam(0.5)
        for pp in (0.5, 1.0, 2.0, 8.0):
            assert abc_laplace_closed(1.0 / pp, 1.0, pp, p) == pytest.approx(0.0, abs=1e-15)

    def test_abr_constant(self):
        assert abr_laplace_closed(1.0, 1.0, AlphaParam(0.5)) == pytest.approx(1.0, abs=1e-15)

    def test_abr_ramp_at_p4(self):
        v = abr_laplace_closed(1.0 / 16.0, 4.0, AlphaParam(0.5))
        assert v == pytest.approx(1.0 / 12.0, abs=1e-15)

    def test_abr_zero(self):
        assert abr_laplace_closed(0.0, 2.0, AlphaParam(0.3)) == 0.0

    def test_domain_transfer(self):
        # caputo-type transform = riemann-type transform - relation transform,
        # exactly in closed form
        rng = np.random.default_rng(9)
        for _ in range(200):
            prm = AlphaParam(float(rng.uniform(0.05, 0.95)),
                             "unit" if rng.random() < 0.5 else "gamma")
            lf = float(rng.standard_normal())
            f0 = float(rng.standard_normal())
            p = float(rng.uniform(0.1, 10.0))
            lhs = abc_laplace_closed(lf, f0, p, prm)
            rhs = abr_laplace_closed(lf, p, prm) - relation_term_laplace(f0, p, prm)
            assert lhs == pytest.approx(rhs, abs=1e-14 * (1 + abs(rhs)))

    def test_sample_validation(self):
        s = TransformSample(p=1.0, numeric=2.0, closed=2.5)
        assert s.rel_err == pytest.approx(0.2)
        with pytest.raises(DomainError):
            TransformSample(p=0.0, numeric=1.0, closed=1.0)


class TestVerifyTransforms:
    def test_empty_catalog_vacuous(self):
        rep = verify_transforms(catalog=[], prm=AlphaParam(0.5))
        assert rep.passed and rep.max_rel_err == 0.0

    def test_single_ramp(self):
        rep = verify_transforms(catalog=[parse_function("poly:0,1")],
                                prm=AlphaParam(0.5), p_grid=(1.0,), n=2048)
        assert rep.passed and rep.max_rel_err <= 5e-3

    @pytest.mark.parametrize("norm", ("unit", "gamma"))
    def test_full_catalog(self, norm):
        rep = verify_transforms(prm=AlphaParam(0.5, norm), n=2048)
        assert rep.passed, rep.max_rel_err
