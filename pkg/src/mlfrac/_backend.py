"""Selects the summation backend: compiled extension or numpy fallback.

Set ``MLFRAC_BACKEND=numpy`` (or ``compiled``) to force a choice; the
default tries the compiled module first.
"""

from __future__ import annotations

import os

_choice = os.environ.get("MLFRAC_BACKEND", "auto").strip().lower()

if _choice not in ("auto", "compiled", "numpy"):
    raise ImportError(f"MLFRAC_BACKEND must be auto, compiled or numpy, got {_choice!r}")

if _choice == "numpy":
    from . import _mlkernel_py as _impl
else:
    try:
        from . import _mlkernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "MLFRAC_BACKEND=compiled but the mlfrac._mlkernel extension is not built"
            ) from None
        from . import _mlkernel_py as _impl

BACKEND = _impl.BACKEND_NAME
series_sum = _impl.series_sum
asymp_sum = _impl.asymp_sum


def available_backends():
    """Names of importable backends, compiled first if present."""
    names = []
    try:
        from . import _mlkernel  # noqa: F401

        names.append("compiled")
    except ImportError:
        pass
    names.append("numpy")
    return names
