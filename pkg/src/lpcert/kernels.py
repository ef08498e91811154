"""Kernel backend selection: compiled extension if available, numpy otherwise.

Set LPCERT_FORCE_FALLBACK=1 to skip the compiled module (used by the
benchmark and the backend-parity tests).
"""

from __future__ import annotations

import os

if os.environ.get("LPCERT_FORCE_FALLBACK"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

power_iterate_dense = _impl.power_iterate_dense
power_iterate_banded = _impl.power_iterate_banded
BACKEND = _impl.BACKEND


def backend_name() -> str:
    return BACKEND
