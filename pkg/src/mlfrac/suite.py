"""The acceptance checks as library functions.

Each criterion returns one :class:`VerificationReport`; ``run_acceptance``
collects them all.  The CLI ``verify`` subcommand and the pytest acceptance
module both call into here, so command-line runs and CI exercise exactly
the same code paths.
"""

from __future__ import annotations

import math
import os
import time
from typing import Iterable, Optional

import numpy as np

from . import _backend, _engine, oracle
from ._catalog import parse_function, relation_catalog, transform_catalog
from .ab_core import (AlphaParam, SampledFunction, ab_integral, abc_derivative,
                      abr_derivative)
from .errors import ConvergenceRangeError
from .fode import ForcingSpec, commutation_check, solve_abc_ode
from .heat import HeatShellSpec, shell_temperature_drop
from .report import VerificationReport, samples_to_csv
from .specfun import (HyperParams, gamma_fn, harmonic_number, hyper_3f2,
                      mittag_leffler, mittag_leffler2)
from .transforms import abc_laplace_closed, numerical_laplace, verify_transforms

BOTH_NORMS = ("unit", "gamma")
DEFAULT_ALPHAS = (0.1, 0.5, 0.9)
_SEED = 20260809


def _norms(norm: Optional[str]) -> tuple:
    if norm is None or norm == "both":
        return BOTH_NORMS
    return (norm,)


def _alphas(alpha: Optional[float], default: Iterable[float]) -> tuple:
    if alpha is None:
        return tuple(default)
    return (alpha,)


def _timed(fn):
    t0 = time.perf_counter()
    rep = fn()
    rep.runtime_s = time.perf_counter() - t0
    return rep


def _slope(ns, errs) -> float:
    ns = np.asarray(ns, dtype=float)
    errs = np.maximum(np.asarray(errs, dtype=float), 1e-300)
    return -float(np.polyfit(np.log(ns), np.log(errs), 1)[0])


# ---------------------------------------------------------------------------
# 1. special-function oracle suite
# ---------------------------------------------------------------------------

def criterion_specfun_oracles(runtime_limit: float = 10.0) -> VerificationReport:
    """Randomized comparison against the decimal reference series, plus the
    closed-form identities.  Sampling is restricted to arguments where the
    reference series itself converges in extended precision; the deep
    negative regime is covered by the scaled-erfc identity and by direct
    agreement between the two evaluation strategies in their overlap band.
    """
    def run():
        rng = np.random.default_rng(_SEED)
        worst = {}

        def draw_ml_point():
            while True:
                a = rng.uniform(0.1, 1.0)
                z = rng.uniform(-50.0, 5.0)
                if abs(z) ** (1.0 / a) <= 36.0:
                    return a, z

        # absolute error wherever |E| <= 1 (the whole kernel range z <= 0);
        # scaled by |E| beyond, where a 1e-10 absolute target is below one ulp
        err = 0.0
        for _ in range(100):
            a, z = draw_ml_point()
            ref = float(oracle.ml_ref(a, 1.0, z))
            err = max(err, abs(mittag_leffler(a, z) - ref) / max(1.0, abs(ref)))
        worst["ml1_abs(1e-10)"] = (err, 1e-10)

        err = 0.0
        for _ in range(100):
            a, z = draw_ml_point()
            b = rng.uniform(0.5, 3.0)
            ref = float(oracle.ml_ref(a, b, z))
            err = max(err, abs(mittag_leffler2(a, b, z) - ref) / max(1.0, abs(ref)))
        worst["ml2_abs(1e-10)"] = (err, 1e-10)

        err = 0.0
        for _ in range(100):
            x = rng.uniform(0.1, 50.0)
            ref = float(oracle.gamma_ref(x))
            err = max(err, abs(gamma_fn(x) - ref) / ref)
        worst["gamma_rel(1e-13)"] = (err, 1e-13)

        err = 0.0
        for _ in range(100):
            a = rng.uniform(-0.9, 5.0)
            err = max(err, abs(harmonic_number(a) - float(oracle.harmonic_ref(a))))
        worst["harmonic_abs(1e-10)"] = (err, 1e-10)

        err = 0.0
        for _ in range(100):
            a = rng.uniform(0.01, 0.99)
            x = rng.uniform(-0.9, 0.9)
            v = hyper_3f2(HyperParams((1.0, 1.0, 1.0 - a), (2.0, 2.0), x))
            ref = float(oracle.hyper3f2_ref([1.0, 1.0, 1.0 - a], [2.0, 2.0], x))
            err = max(err, abs(v - ref) / max(abs(ref), 1e-300))
        worst["hyper3f2_rel(1e-10)"] = (err, 1e-10)

        # closed-form identities at 1e-9
        err = 0.0
        for z in np.linspace(-30.0, 3.0, 23):
            err = max(err, abs(mittag_leffler(1.0, z) - math.exp(z)))
        worst["id_exp(1e-9)"] = (err, 1e-9)

        err = 0.0
        for z in np.linspace(-30.0, 3.0, 23):
            if z == 0.0:
                continue
            err = max(err, abs(mittag_leffler2(1.0, 2.0, z) - math.expm1(z) / z))
        worst["id_expm1(1e-9)"] = (err, 1e-9)

        err = 0.0
        for x in np.concatenate([np.linspace(0.1, 5.0, 15), np.array([8.0, 12.0, 18.0, 25.0])]):
            ref = math.exp(x * x) * math.erfc(x)
            err = max(err, abs(mittag_leffler(0.5, -x) - ref))
        worst["id_erfc(1e-9)"] = (err, 1e-9)

        err = abs(harmonic_number(0.5) - (2.0 - 2.0 * math.log(2.0)))
        worst["id_harmonic_half(1e-9)"] = (err, 1e-9)

        err = 0.0
        for x in (0.5, -0.5, 0.25, 0.9):
            v = hyper_3f2(HyperParams((1.0, 1.0, 1.0), (2.0, 2.0), x))
            err = max(err, abs(v - float(oracle.li2_ref(x)) / x))
        err = max(err, abs(hyper_3f2(HyperParams((1.0, 1.0, 1.0), (2.0, 2.0), 0.5))
                           - (math.pi ** 2 / 12 - math.log(2.0) ** 2 / 2) / 0.5))
        worst["id_dilog(1e-9)"] = (err, 1e-9)

        # strategy-overlap consistency: power series vs large-argument
        # expansion where both certify
        err = 0.0
        for a in (0.3, 0.5, 0.7, 0.9):
            for xs in (30.0, 33.0, 36.0):
                z = np.array([-(xs ** a)])
                rg0h, rg0l, rat_h, rat_l = _engine._series_table(a, 1.0)
                vs, es = _backend.series_sum(z, rat_h, rat_l, rg0h, rg0l, 1e-10)
                rg2, env = _engine._asym_table(a, 1.0)
                va, ea = _backend.asymp_sum(z, rg2, env, a, 1e-10)
                if es[0] <= 1e-10 and ea[0] <= 1e-10:
                    err = max(err, abs(vs[0] - va[0]))
        worst["overlap_consistency(2e-10)"] = (err, 2e-10)

        passed = all(e <= tol for e, tol in worst.values())
        return VerificationReport(
            name="1. special-function oracle suite",
            passed=passed,
            max_abs_err=max(e for e, _ in worst.values()),
            max_rel_err=worst["gamma_rel(1e-13)"][0],
            tolerance=1e-10,
            grid_sizes=(100,),
            details={k: v[0] for k, v in worst.items()},
        )

    rep = _timed(run)
    if rep.runtime_s > runtime_limit:
        rep.passed = False
        rep.details["runtime_exceeded"] = rep.runtime_s
    return rep


# ---------------------------------------------------------------------------
# 2. constant functions map to zero
# ---------------------------------------------------------------------------

def criterion_constant_kill(alpha: Optional[float] = None, norm: Optional[str] = None,
                            runtime_limit: float = 1.0) -> VerificationReport:
    def run():
        worst = 0.0
        for b_norm in _norms(norm):
            for a in _alphas(alpha, DEFAULT_ALPHAS):
                for c in (0.0, 1.0, -3.7):
                    f = SampledFunction.from_callable(lambda t, c=c: c + 0.0 * t, 0.0, 1.0, 256)
                    out = abc_derivative(f, AlphaParam(a, b_norm))
                    worst = max(worst, float(np.max(np.abs(out.values))))
        return VerificationReport(
            name="2. constant-kill (caputo-type of const = 0)",
            passed=worst <= 1e-12,
            max_abs_err=worst, max_rel_err=worst, tolerance=1e-12,
            grid_sizes=(256,),
        )

    rep = _timed(run)
    if rep.runtime_s > runtime_limit:
        rep.passed = False
        rep.details["runtime_exceeded"] = rep.runtime_s
    return rep


# ---------------------------------------------------------------------------
# 3. derivative-relation residual on the catalog
# ---------------------------------------------------------------------------

def criterion_relation_residual(alpha: Optional[float] = None, norm: Optional[str] = None,
                                n: int = 2048, runtime_limit: float = 30.0) -> VerificationReport:
    def run():
        worst_ratio = 0.0
        worst_res = 0.0
        for b_norm in _norms(norm):
            for a in _alphas(alpha, DEFAULT_ALPHAS):
                prm = AlphaParam(a, b_norm)
                pref = prm.b_value / (1.0 - a)
                for entry in relation_catalog():
                    fs = entry.sample(0.0, 1.0, n)
                    base = abc_derivative(fs, prm)
                    direct = abr_derivative(fs, prm, method="direct")
                    t = fs.grid
                    w = -prm.a * np.power(t, a)
                    w[0] = 0.0
                    rel = pref * fs.values[0] * _engine.ml_eval_array(a, 1.0, w, 1e-11)
                    residual = float(np.max(np.abs(direct.values - base.values - rel)))
                    bound = 10.0 * float(np.max(base.est_error + direct.est_error)) + 1e-12
                    worst_res = max(worst_res, residual)
                    worst_ratio = max(worst_ratio, residual / bound)
        return VerificationReport(
            name="3. relation residual (riemann = caputo + term)",
            passed=worst_ratio <= 1.0,
            max_abs_err=worst_res, max_rel_err=worst_ratio, tolerance=1.0,
            grid_sizes=(n,),
            details={"worst_residual_over_bound": worst_ratio},
        )

    rep = _timed(run)
    if rep.runtime_s > runtime_limit:
        rep.passed = False
        rep.details["runtime_exceeded"] = rep.runtime_s
    return rep


# ---------------------------------------------------------------------------
# 4. Laplace-domain identities
# ---------------------------------------------------------------------------

def criterion_laplace_identities(alpha: Optional[float] = None, norm: Optional[str] = None,
                                 n: int = 4096, runtime_limit: float = 60.0) -> VerificationReport:
    def run():
        worst = 0.0
        pinned_ok = True
        for b_norm in _norms(norm):
            for a in _alphas(alpha, (0.3, 0.5, 0.7)):
                rep = verify_transforms(prm=AlphaParam(a, b_norm), n=n, t_max=60.0)
                worst = max(worst, rep.max_rel_err)
                if not rep.passed:
                    pinned_ok = False
        # pinned point: f(t) = t, alpha = 0.5, p = 1 must give exactly 1 on
        # the closed side and agree numerically to 1e-3
        prm = AlphaParam(0.5, "unit")
        closed = abc_laplace_closed(1.0, 0.0, 1.0, prm)
        entry = parse_function("poly:0,1")
        fs = entry.sample(0.0, 40.0, n)
        num = numerical_laplace(abc_derivative(fs, prm), 1.0, tol=1e-6)
        pin_err = abs(num - closed)
        if closed != 1.0 or pin_err > 1e-3:
            pinned_ok = False
        return VerificationReport(
            name="4. laplace identities (catalog x p-grid)",
            passed=pinned_ok and worst <= 5e-3,
            max_abs_err=pin_err, max_rel_err=worst, tolerance=5e-3,
            grid_sizes=(n,),
            details={"pinned_closed": closed, "pinned_numeric": num},
        )

    rep = _timed(run)
    if rep.runtime_s > runtime_limit:
        rep.passed = False
        rep.details["runtime_exceeded"] = rep.runtime_s
    return rep


# ---------------------------------------------------------------------------
# 5. fractional-integral endpoints
# ---------------------------------------------------------------------------

def criterion_integral_endpoints(norm: Optional[str] = None) -> VerificationReport:
    def run():
        ok = True
        worst = 0.0
        for b_norm in _norms(norm):
            fs = SampledFunction.from_callable(np.sin, 0.0, 2.0, 512)
            out0 = ab_integral(fs, AlphaParam(0.0, b_norm))
            if not np.array_equal(out0.values, fs.values):
                ok = False
            out1 = ab_integral(fs, AlphaParam(1.0, b_norm))
            h = fs.h
            ref = np.concatenate([[0.0], np.cumsum(h * 0.5 * (fs.values[:-1] + fs.values[1:]))])
            err1 = float(np.max(np.abs(out1.values - ref)))
            worst = max(worst, err1)
            if err1 > 1e-10:
                ok = False
            ones = SampledFunction.from_callable(lambda t: 1.0 + 0.0 * t, 0.0, 1.0, 1024)
            mid = ab_integral(ones, AlphaParam(0.5, b_norm))
            ref_mid = (0.5 + 0.5 / math.gamma(1.5)) / AlphaParam(0.5, b_norm).b_value
            errm = abs(float(mid.values[-1]) - ref_mid)
            worst = max(worst, errm)
            if errm > 1e-6:
                ok = False
        return VerificationReport(
            name="5. fractional-integral endpoints",
            passed=ok, max_abs_err=worst, max_rel_err=worst, tolerance=1e-6,
            grid_sizes=(512, 1024),
        )

    return _timed(run)


# ---------------------------------------------------------------------------
# 6. forcing-recovery round trip for the fractional ODE
# ---------------------------------------------------------------------------

def criterion_ode_roundtrip(alpha: Optional[float] = None, norm: Optional[str] = None,
                            runtime_limit: float = 60.0) -> VerificationReport:
    """Solve D^alpha f = u, apply the Caputo-type derivative, and compare
    with u, for u in {1, t, sin t} (the stated acceptance reading).

    The literal round trip can only close for forcings with u(0) = 0: the
    Caputo-type derivative of the solution formula equals
    u - u(0) E_alpha(-a t^alpha) exactly (straightforward in the Laplace
    domain), and the derivative annihilates constants, so u = 1 cannot be
    recovered by any scheme.  This criterion therefore reports the literal
    comparison (expected to fail for the constant forcing, see the
    decisions ledger) and carries the exact-identity residuals -- which do
    converge -- in the details.  The error is measured on t >= 0.1, away
    from the t = 0 derivative singularity of the solution.
    """
    def run():
        ns = (512, 1024, 2048, 4096)
        worst_final = 0.0
        worst_order = math.inf
        corrected_final = 0.0
        corrected_order = math.inf
        per_u = {}
        for b_norm in _norms(norm):
            for a in _alphas(alpha, (0.5,)):
                prm = AlphaParam(a, b_norm)
                for spec_name in ("const:1", "poly:0,1", "sin:1"):
                    entry = parse_function(spec_name)
                    errs = []
                    errs_fix = []
                    for n in ns:
                        u = entry.sample(0.0, 1.0, n)
                        f = solve_abc_ode(ForcingSpec(u=u, prm=prm))
                        back = abc_derivative(f, prm)
                        t = f.grid
                        mask = t >= 0.1
                        w = -prm.a * np.power(t, a)
                        w[0] = 0.0
                        layer = u.values[0] * _engine.ml_eval_array(a, 1.0, w, 1e-11)
                        errs.append(float(np.max(np.abs(back.values[mask] - u.values[mask]))))
                        errs_fix.append(float(np.max(
                            np.abs(back.values[mask] - (u.values - layer)[mask]))))
                    worst_final = max(worst_final, errs[-1])
                    worst_order = min(worst_order, _slope(ns, errs))
                    corrected_final = max(corrected_final, errs_fix[-1])
                    corrected_order = min(corrected_order, _slope(ns, errs_fix))
                    per_u[f"{spec_name}[{a:g},{b_norm}]"] = (errs[-1], errs_fix[-1])
        return VerificationReport(
            name="6. ode round trip (derivative of solution = forcing)",
            passed=(worst_final <= 5e-3) and (worst_order >= 1.0),
            max_abs_err=worst_final, max_rel_err=worst_final, tolerance=5e-3,
            grid_sizes=ns,
            details={
                "min_order": worst_order,
                "exact_identity_residual": corrected_final,
                "exact_identity_order": corrected_order,
                "per_forcing(literal,identity)": per_u,
            },
        )

    rep = _timed(run)
    if rep.runtime_s > runtime_limit:
        rep.passed = False
        rep.details["runtime_exceeded"] = rep.runtime_s
    return rep


# ---------------------------------------------------------------------------
# 7. first-derivative commutation
# ---------------------------------------------------------------------------

def criterion_commutation(alpha: Optional[float] = None,
                          norm: Optional[str] = None) -> VerificationReport:
    def run():
        ns = (512, 1024, 2048, 4096)
        ok = True
        worst_final = 0.0
        min_order = math.inf
        entry = parse_function("poly:0,0,1")
        for b_norm in _norms(norm):
            for a in _alphas(alpha, (0.5,)):
                prm = AlphaParam(a, b_norm)
                discs = []
                for n in ns:
                    f = entry.sample(0.0, 1.0, n)
                    rep = commutation_check(f, prm)
                    discs.append(rep.max_abs_err)
                    if not rep.passed:
                        ok = False
                worst_final = max(worst_final, discs[-1])
                min_order = min(min_order, _slope(ns, discs))
        return VerificationReport(
            name="7. commutation with d/dt (f = t^2)",
            passed=ok and worst_final <= 1e-2 and min_order >= 1.0,
            max_abs_err=worst_final, max_rel_err=worst_final, tolerance=1e-2,
            grid_sizes=ns,
            details={"min_order": min_order},
        )

    return _timed(run)


# ---------------------------------------------------------------------------
# 8. boundedness inequality
# ---------------------------------------------------------------------------

def criterion_bound_inequality(alpha: Optional[float] = None, norm: Optional[str] = None,
                               n: int = 1024) -> VerificationReport:
    def run():
        ok = True
        worst_margin = -math.inf
        for b_norm in _norms(norm):
            for a in _alphas(alpha, DEFAULT_ALPHAS):
                prm = AlphaParam(a, b_norm)
                for entry in relation_catalog():
                    fs = entry.sample(0.0, 1.0, n)
                    out = abr_derivative(fs, prm)
                    lhs = float(np.max(np.abs(out.values)))
                    kbound = prm.b_value / (1.0 - a) * float(np.max(np.abs(fs.values)))
                    slack = 10.0 * float(np.max(out.est_error)) + 1e-9
                    margin = lhs - (kbound + slack)
                    worst_margin = max(worst_margin, margin)
                    if margin >= 0.0:
                        ok = False
        return VerificationReport(
            name="8. boundedness of the riemann-type derivative",
            passed=ok, max_abs_err=max(worst_margin, 0.0),
            max_rel_err=max(worst_margin, 0.0), tolerance=0.0,
            grid_sizes=(n,),
            details={"worst_margin": worst_margin},
        )

    return _timed(run)


# ---------------------------------------------------------------------------
# 9. heat-shell model against the decimal oracle
# ---------------------------------------------------------------------------

def criterion_heat_model(norm: Optional[str] = None) -> VerificationReport:
    def run():
        worst_rel = 0.0
        ok = True
        for b_norm in _norms(norm):
            for a in (0.1, 0.3, 0.5, 0.7, 0.9):
                for ratio in (0.2, 0.4, 0.6, 0.8):
                    spec = HeatShellSpec(r1=2.0 * ratio, r2=2.0, length=1.3, k=0.9,
                                         q_dot=3.7, alpha=a, b_norm=b_norm)
                    v = shell_temperature_drop(spec)
                    ref = float(oracle.heat_drop_ref(2.0 * ratio, 2.0, 1.3, 0.9, 3.7, a))
                    worst_rel = max(worst_rel, abs(v - ref) / abs(ref))
        if worst_rel > 1e-8:
            ok = False
        # pinned point at unit scale
        pin = HeatShellSpec(r1=1.0, r2=2.0, length=1.0, k=1.0,
                            q_dot=2.0 * math.pi, alpha=0.5)
        pin_err = abs(shell_temperature_drop(pin) - 1.4929009605609221)
        if pin_err > 1e-3:
            ok = False
        # exact homogeneity in the heat rate
        s1 = HeatShellSpec(r1=1.0, r2=2.0, length=1.0, k=1.0, q_dot=0.7, alpha=0.4)
        s2 = HeatShellSpec(r1=1.0, r2=2.0, length=1.0, k=1.0, q_dot=1.4, alpha=0.4)
        if shell_temperature_drop(s2) != 2.0 * shell_temperature_drop(s1):
            ok = False
        zero = HeatShellSpec(r1=1.0, r2=2.0, length=1.0, k=1.0, q_dot=0.0, alpha=0.4)
        if shell_temperature_drop(zero) != 0.0:
            ok = False
        return VerificationReport(
            name="9. heat-shell model vs decimal oracle",
            passed=ok, max_abs_err=pin_err, max_rel_err=worst_rel, tolerance=1e-8,
            grid_sizes=(40,),
            details={"pinned_abs_err": pin_err},
        )

    return _timed(run)


# ---------------------------------------------------------------------------
# 10. determinism of CSV output under the thread cap
# ---------------------------------------------------------------------------

def _deriv_csv_once() -> str:
    entry = parse_function("sin:2")
    fs = entry.sample(0.0, 1.0, 512)
    out = abc_derivative(fs, AlphaParam(0.5))
    return samples_to_csv(out.grid, out.values, out.est_error)


def criterion_determinism() -> VerificationReport:
    def run():
        old = os.environ.get("MLFRAC_THREADS")
        try:
            os.environ["MLFRAC_THREADS"] = "1"
            first = _deriv_csv_once()
            os.environ["MLFRAC_THREADS"] = "8"
            second = _deriv_csv_once()
        finally:
            if old is None:
                os.environ.pop("MLFRAC_THREADS", None)
            else:
                os.environ["MLFRAC_THREADS"] = old
        same = first == second
        return VerificationReport(
            name="10. deterministic csv under thread cap",
            passed=same, max_abs_err=0.0 if same else 1.0,
            max_rel_err=0.0 if same else 1.0, tolerance=0.0,
            grid_sizes=(512,),
        )

    return _timed(run)


def run_acceptance(alpha: Optional[float] = None, norm: Optional[str] = None):
    """Run every acceptance criterion; returns the list of reports."""
    return [
        criterion_specfun_oracles(),
        criterion_constant_kill(alpha, norm),
        criterion_relation_residual(alpha, norm),
        criterion_laplace_identities(alpha if alpha in (0.3, 0.5, 0.7) else None, norm),
        criterion_integral_endpoints(norm),
        criterion_ode_roundtrip(alpha if alpha is not None and 0 < alpha < 1 else None, norm),
        criterion_commutation(alpha if alpha is not None and 0 < alpha < 1 else None, norm),
        criterion_bound_inequality(alpha, norm),
        criterion_heat_model(norm),
        criterion_determinism(),
    ]
