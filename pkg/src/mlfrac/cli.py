"""Command-line interface.

Subcommands: ``mlf`` (special-function evaluation), ``deriv`` (fractional
derivatives), ``integral``, ``solve`` (fractional ODE), ``heat`` (shell
temperature drop or flux profile) and ``verify`` (the acceptance suite).

Exit codes: 0 on success or a passing verification, 1 on verification
failure, 2 on usage or domain errors.  Numeric CSV output is byte-stable
across runs and thread settings; ``MLFRAC_THREADS`` caps worker threads
(0 = auto) and never affects values.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

import numpy as np

from ._catalog import parse_function
from .ab_core import AlphaParam, SampledFunction, ab_integral, abc_derivative, \
    abr_derivative, cf_derivative
from .errors import ConvergenceRangeError, DomainError, PreconditionError, \
    ResolutionError
from .fode import ForcingSpec, solve_abc_ode
from .heat import HeatShellSpec, RadialProfile, heat_flux, shell_temperature_drop
from .report import format_table, reports_to_csv, samples_to_csv
from .specfun import HyperParams, harmonic_number, hyper_3f2, mittag_leffler2
from .suite import run_acceptance

_USAGE_ERRORS = (DomainError, ConvergenceRangeError, ResolutionError,
                 PreconditionError)


def thread_cap() -> int:
    """Validated MLFRAC_THREADS value (0 = auto).  The numeric kernels run
    deterministic single-threaded reductions, so any cap is honored."""
    raw = os.environ.get("MLFRAC_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"MLFRAC_THREADS must be a non-negative integer, got {raw!r}")
    if cap < 0:
        raise DomainError(f"MLFRAC_THREADS must be >= 0, got {cap}")
    return cap


def _write_output(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _load_csv_function(path: str) -> SampledFunction:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except (ValueError, IndexError):
                if not rows:
                    continue  # header row
                raise DomainError(f"malformed CSV line: {line!r}")
    if len(rows) < 3:
        raise DomainError("input CSV needs at least 3 samples")
    t = np.array([r[0] for r in rows])
    v = np.array([r[1] for r in rows])
    steps = np.diff(t)
    if not (steps > 0).all():
        raise DomainError("input CSV grid must be strictly increasing")
    h = steps[0]
    if np.max(np.abs(steps - h)) > 1e-9 * max(1.0, abs(h)):
        raise DomainError("input CSV grid must be uniform")
    return SampledFunction(t0=float(t[0]), T=float(t[-1]), n=t.size - 1, values=v)


def _function_from_args(args) -> SampledFunction:
    if args.input is not None:
        return _load_csv_function(args.input)
    if args.fn is None:
        raise DomainError("provide --fn NAME or --input CSV")
    entry = parse_function(args.fn)
    return entry.sample(args.t0, args.T, args.n)


def _add_sampling_flags(p, with_t0=True):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--fn", help="builtin function, e.g. const:7, poly:0,1, exp:-1, sin:2")
    g.add_argument("--input", help="CSV file with a uniform t,value grid")
    p.add_argument("--n", type=int, default=1024, help="number of grid intervals")
    p.add_argument("--T", type=float, default=1.0, help="right endpoint")
    if with_t0:
        p.add_argument("--t0", type=float, default=0.0, help="left endpoint")
    p.add_argument("-o", "--output", default=None, help="output path ('-' = stdout)")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mlfrac",
                                 description="Fractional operators with Mittag-Leffler kernels")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mlf", help="evaluate special functions")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--z", help="comma-separated arguments for E_{alpha,beta}")
    p.add_argument("--harmonic", action="store_true", help="print H(alpha) instead")
    p.add_argument("--hyper", action="store_true", help="evaluate 3F2 instead")
    p.add_argument("--upper", help="three comma-separated upper parameters (with --hyper)")
    p.add_argument("--lower", help="two comma-separated lower parameters (with --hyper)")
    p.add_argument("--x", type=float, help="3F2 argument, |x| < 1 (with --hyper)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("-o", "--output", default=None)

    for name, help_text in (("deriv", "fractional derivatives"),):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("kind", choices=("abc", "abr", "cf"),
                       help="caputo-type, riemann-type, or exponential-kernel")
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--norm", choices=("unit", "gamma"), default="unit")
        _add_sampling_flags(p)

    p = sub.add_parser("integral", help="fractional integral")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--norm", choices=("unit", "gamma"), default="unit")
    _add_sampling_flags(p)

    p = sub.add_parser("solve", help="solve D^alpha f = u for f")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--norm", choices=("unit", "gamma"), default="unit")
    _add_sampling_flags(p, with_t0=False)

    p = sub.add_parser("heat", help="cylindrical-shell temperature drop or flux profile")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--norm", choices=("unit", "gamma"), default="unit")
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--length", type=float, default=1.0)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--qdot", type=float, default=1.0)
    p.add_argument("--flux", action="store_true",
                   help="emit the radial flux profile for a temperature profile")
    p.add_argument("--area", type=float, default=1.0)
    p.add_argument("--fn", help="temperature profile on [r1, r2] (with --flux)")
    p.add_argument("--input", help="temperature profile CSV (with --flux)")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--alpha", type=float, default=None,
                   help="restrict order-parametrized checks to one alpha")
    p.add_argument("--norm", choices=("unit", "gamma", "both"), default="both")
    p.add_argument("-o", "--output", default=None, help="also write the report CSV here")
    return ap


def _cmd_mlf(args) -> int:
    lines = []
    if args.hyper:
        if args.upper is None or args.lower is None or args.x is None:
            raise DomainError("--hyper needs --upper, --lower and --x")
        upper = [float(v) for v in args.upper.split(",")]
        lower = [float(v) for v in args.lower.split(",")]
        lines.append(f"{hyper_3f2(HyperParams(upper, lower, args.x)):.17g}")
    elif args.harmonic:
        lines.append(f"{harmonic_number(args.alpha):.17g}")
    else:
        if args.z is None:
            raise DomainError("provide --z (or --harmonic / --hyper)")
        for zs in args.z.split(","):
            v = mittag_leffler2(args.alpha, args.beta, float(zs), tol=args.tol)
            lines.append(f"{v:.17g}")
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


_DERIV_OPS = {"abc": abc_derivative, "abr": abr_derivative, "cf": cf_derivative}


def _cmd_deriv(args) -> int:
    f = _function_from_args(args)
    out = _DERIV_OPS[args.kind](f, AlphaParam(args.alpha, args.norm))
    _write_output(samples_to_csv(out.grid, out.values, out.est_error), args.output)
    return 0


def _cmd_integral(args) -> int:
    f = _function_from_args(args)
    out = ab_integral(f, AlphaParam(args.alpha, args.norm))
    _write_output(samples_to_csv(out.grid, out.values, out.est_error), args.output)
    return 0


def _cmd_solve(args) -> int:
    args.t0 = 0.0
    u = _function_from_args(args)
    f = solve_abc_ode(ForcingSpec(u=u, prm=AlphaParam(args.alpha, args.norm)))
    _write_output(samples_to_csv(f.grid, f.values), args.output)
    return 0


def _cmd_heat(args) -> int:
    if not args.flux:
        spec = HeatShellSpec(r1=args.r1, r2=args.r2, length=args.length, k=args.k,
                             q_dot=args.qdot, alpha=args.alpha, b_norm=args.norm)
        _write_output(f"{shell_temperature_drop(spec):.17g}\n", args.output)
        return 0
    if args.input is not None:
        fs = _load_csv_function(args.input)
        r, temps = fs.grid, fs.values
    elif args.fn is not None:
        entry = parse_function(args.fn)
        fs = entry.sample(args.r1, args.r2, args.n)
        r, temps = fs.grid, fs.values
    else:
        raise DomainError("--flux needs --fn or --input for the temperature profile")
    profile = RadialProfile(r=r, temperature=temps, alpha=args.alpha, k=args.k,
                            area=args.area, b_norm=args.norm)
    flux = heat_flux(profile)
    _write_output(samples_to_csv(flux.grid, flux.values), args.output)
    return 0


def _cmd_verify(args) -> int:
    norm = None if args.norm == "both" else args.norm
    reports = run_acceptance(alpha=args.alpha, norm=norm)
    sys.stdout.write(format_table(reports) + "\n")
    if args.output is not None:
        _write_output(reports_to_csv(reports), args.output)
    return 0 if all(r.passed for r in reports) else 1


_COMMANDS = {
    "mlf": _cmd_mlf,
    "deriv": _cmd_deriv,
    "integral": _cmd_integral,
    "solve": _cmd_solve,
    "heat": _cmd_heat,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        thread_cap()
        return _COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        print(f"mlfrac: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"mlfrac: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
