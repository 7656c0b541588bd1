"""Backend selection for the search kernels.

The compiled extension is used when it was built; otherwise the pure-Python
twin is loaded.  Set ``CYCLE_ENCLOSE_PURE_PYTHON=1`` to force the fallback.
Both backends produce identical results, so certificates do not depend on
which one ran.
"""

from __future__ import annotations

import os

from . import _kernel_py

FOUND = _kernel_py.FOUND
EXHAUSTED = _kernel_py.EXHAUSTED
LIMIT = _kernel_py.LIMIT

_force_pure = os.environ.get("CYCLE_ENCLOSE_PURE_PYTHON", "") not in ("", "0")

try:
    if _force_pure:
        raise ImportError("pure Python backend requested")
    from . import _kernel as _impl  # type: ignore[attr-defined]

    BACKEND = "cython"
except ImportError:
    _impl = _kernel_py
    BACKEND = "python"

greedy_cycles = _impl.greedy_cycles
exact_cycles = _impl.exact_cycles
