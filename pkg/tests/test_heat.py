"""Cylindrical-shell heat model against the decimal oracle."""

import math

import numpy as np
import pytest

from mlfrac import _engine, oracle
from mlfrac.ab_core import AlphaParam, SampledFunction, abr_derivative
from mlfrac.errors import ConvergenceRangeError, DomainError
from mlfrac.heat import HeatShellSpec, RadialProfile, heat_flux, shell_temperature_drop

DT_UNIT_SCALE = 1.4929009605609221  # alpha=1/2, r1=1, r2=2, q/(2 pi L k) = 1


def _spec(**kw):
    base = dict(r1=1.0, r2=2.0, length=1.0, k=1.0, q_dot=1.0, alpha=0.5)
    base.update(kw)
    return HeatShellSpec(**base)


class TestShellTemperatureDrop:
    def test_zero_heat_rate(self):
        assert shell_temperature_drop(_spec(q_dot=0.0)) == 0.0

    def test_unit_scale_value(self):
        v = shell_temperature_drop(_spec(q_dot=2.0 * math.pi))
        assert v == pytest.approx(DT_UNIT_SCALE, abs=1e-3)
        assert v == pytest.approx(DT_UNIT_SCALE, abs=1e-12)
        ref = float(oracle.heat_drop_ref(1.0, 2.0, 1.0, 1.0, 2.0 * math.pi, 0.5))
        assert v == pytest.approx(ref, rel=1e-12)

    def test_doubling_heat_rate_is_exact(self):
        v1 = shell_temperature_drop(_spec(q_dot=1.23))
        v2 = shell_temperature_drop(_spec(q_dot=2.46))
        assert v2 == 2.0 * v1

    def test_homogeneity_in_k_and_length(self):
        base = shell_temperature_drop(_spec())
        assert shell_temperature_drop(_spec(k=2.0)) == pytest.approx(base / 2.0, rel=1e-14)
        assert shell_temperature_drop(_spec(length=4.0)) == pytest.approx(base / 4.0, rel=1e-14)

    def test_oracle_grid(self):
        for alpha in (0.1, 0.3, 0.5, 0.7, 0.9):
            for ratio in (0.2, 0.4, 0.6, 0.8):
                spec = _spec(r1=2.0 * ratio, alpha=alpha, length=0.7, k=2.3, q_dot=-1.9)
                ref = float(oracle.heat_drop_ref(2.0 * ratio, 2.0, 0.7, 2.3, -1.9, alpha))
                assert shell_temperature_drop(spec) == pytest.approx(ref, rel=1e-8)

    def test_radial_scale_dependence_matches_oracle(self):
        # the formula is not invariant under joint scaling of the radii;
        # check the literal behaviour against the reference, not physics
        a = shell_temperature_drop(_spec(r1=1.0, r2=2.0))
        b = shell_temperature_drop(_spec(r1=2.0, r2=4.0))
        ref_a = float(oracle.heat_drop_ref(1.0, 2.0, 1.0, 1.0, 1.0, 0.5))
        ref_b = float(oracle.heat_drop_ref(2.0, 4.0, 1.0, 1.0, 1.0, 0.5))
        assert a != pytest.approx(b, rel=1e-3)
        assert a == pytest.approx(ref_a, rel=1e-10)
        assert b == pytest.approx(ref_b, rel=1e-10)

    def test_alpha_near_one_rejected(self):
        with pytest.raises(ConvergenceRangeError):
            shell_temperature_drop(_spec(alpha=0.995))

    def test_geometry_validation(self):
        with pytest.raises(DomainError):
            HeatShellSpec(r1=2.0, r2=1.0, length=1.0, k=1.0, q_dot=1.0, alpha=0.5)
        with pytest.raises(DomainError):
            HeatShellSpec(r1=0.0, r2=1.0, length=1.0, k=1.0, q_dot=1.0, alpha=0.5)
        with pytest.raises(DomainError):
            _spec(alpha=1.2)


class TestHeatFlux:
    def _profile(self, fn, n=256, alpha=0.4, area=2.0, k=3.0):
        r = np.linspace(1.0, 2.0, n + 1)
        return RadialProfile(r=r, temperature=fn(r), alpha=alpha, k=k, area=area)

    def test_zero_profile(self):
        flux = heat_flux(self._profile(lambda r: 0.0 * r))
        assert np.all(flux.values == 0.0)

    def test_constant_profile_nonzero(self):
        # spatial operator of a constant is nonzero: flux follows the kernel
        t0 = 5.0
        prof = self._profile(lambda r: t0 + 0.0 * r)
        flux = heat_flux(prof)
        p = AlphaParam(0.4)
        s = flux.grid - 1.0
        w = -p.a * np.power(s, 0.4)
        w[0] = 0.0
        ref = -3.0 * 2.0 * (p.b_value / 0.6) * t0 * _engine.ml_eval_array(0.4, 1.0, w, 1e-11)
        assert np.max(np.abs(flux.values - ref)) <= 1e-8

    def test_matches_spatial_operator(self):
        prof = self._profile(lambda r: np.sin(r))
        flux = heat_flux(prof)
        fs = SampledFunction(t0=1.0, T=2.0, n=256, values=np.sin(prof.r))
        ref = -prof.k * prof.area * abr_derivative(fs, AlphaParam(0.4)).values
        assert np.max(np.abs(flux.values - ref)) <= 1e-12

    def test_linearity(self):
        p1 = self._profile(lambda r: np.sin(r))
        p2 = self._profile(lambda r: r * r)
        psum = self._profile(lambda r: np.sin(r) + r * r)
        s = heat_flux(psum).values
        ref = heat_flux(p1).values + heat_flux(p2).values
        assert np.max(np.abs(s - ref)) <= 1e-10 * (np.max(np.abs(ref)) + 1.0)

    def test_profile_validation(self):
        with pytest.raises(DomainError):
            RadialProfile(r=np.array([1.0, 0.9, 1.2]), temperature=np.zeros(3),
                          alpha=0.5, k=1.0, area=1.0)
        with pytest.raises(DomainError):
            RadialProfile(r=np.array([1.0, 1.1, 1.3]), temperature=np.zeros(3),
                          alpha=0.5, k=1.0, area=1.0)
        with pytest.raises(DomainError):
            RadialProfile(r=np.linspace(1, 2, 5), temperature=np.zeros(4),
                          alpha=0.5, k=1.0, area=1.0)
