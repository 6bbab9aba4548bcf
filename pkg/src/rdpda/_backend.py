"""Kernel backend selection.

The compiled extension is used when importable; set RDPDA_PURE_PYTHON=1 to
force the pure-Python kernels (useful for benchmarking and debugging).
"""
from __future__ import annotations

import os

if os.environ.get("RDPDA_PURE_PYTHON", "0") not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels

BACKEND: str = kernels.BACKEND
canonical_accessible = kernels.canonical_accessible
saturate = kernels.saturate
