"""Select the simplex kernel backend at import.

The compiled extension is used when it was built; set
``PMWITNESS_PURE_PYTHON=1`` to force the pure-Python kernel.
"""
import os

from . import _kernel_py

if os.environ.get("PMWITNESS_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernel_py

BACKEND = "python" if _impl is _kernel_py else "cython"

pivot = _impl.pivot
entering = _impl.entering
leaving = _impl.leaving
simplex_loop = _impl.simplex_loop
OPTIMAL = _impl.OPTIMAL
UNBOUNDED = _impl.UNBOUNDED
ITERATION_LIMIT = _impl.ITERATION_LIMIT


def available_backends():
    """Mapping of backend name to kernel module for every importable backend."""
    out = {"python": _kernel_py}
    try:
        from . import _kernel
    except ImportError:
        pass
    else:
        out["cython"] = _kernel
    return out
