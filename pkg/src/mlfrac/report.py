"""Verification report records and table/CSV rendering."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class VerificationReport:
    """Outcome of one named check: worst errors, the tolerance it was held
    to, grid sizes involved, and pass/fail."""

    name: str
    passed: bool
    max_abs_err: float
    max_rel_err: float
    tolerance: float
    grid_sizes: tuple = ()
    details: dict = field(default_factory=dict)
    runtime_s: Optional[float] = None

    def row(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        grids = ",".join(str(g) for g in self.grid_sizes) or "-"
        rt = f"{self.runtime_s:.2f}" if self.runtime_s is not None else "-"
        return (f"{status:4s}  {self.name:44s} abs={self.max_abs_err:9.2e} "
                f"rel={self.max_rel_err:9.2e} tol={self.tolerance:8.1e} "
                f"n={grids:15s} t={rt}s")


def format_table(reports) -> str:
    lines = [r.row() for r in reports]
    n_fail = sum(not r.passed for r in reports)
    lines.append(f"{len(reports)} checks, {len(reports) - n_fail} passed, {n_fail} failed")
    return "\n".join(lines)


def reports_to_csv(reports) -> str:
    """Deterministic CSV serialization (LF endings, 17 significant digits)."""
    out = ["name,passed,max_abs_err,max_rel_err,tolerance,grid_sizes"]
    for r in reports:
        grids = ";".join(str(g) for g in r.grid_sizes)
        out.append(f"{r.name},{int(r.passed)},{r.max_abs_err:.17g},"
                   f"{r.max_rel_err:.17g},{r.tolerance:.17g},{grids}")
    return "\n".join(out) + "\n"


def samples_to_csv(grid, values, est_error=None) -> str:
    """CSV of grid samples: header ``t,value[,est_error]``, LF endings,
    full-precision decimal, locale independent."""
    if est_error is None:
        rows = ["t,value"]
        rows.extend(f"{t:.17g},{v:.17g}" for t, v in zip(grid, values))
    else:
        rows = ["t,value,est_error"]
        rows.extend(f"{t:.17g},{v:.17g},{e:.17g}"
                    for t, v, e in zip(grid, values, est_error))
    return "\n".join(rows) + "\n"
