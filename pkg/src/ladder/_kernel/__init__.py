"""Scan kernel, compiled when available.

``LADDER_PURE_PYTHON=1`` forces the fallback.  ``BACKEND`` names the one
in use.
"""

import os

from . import _scan_py

if os.environ.get("LADDER_PURE_PYTHON", "") not in ("", "0"):
    scan_chain = _scan_py.scan_chain
    BACKEND = "python"
else:
    try:
        from ._scan_c import scan_chain  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        scan_chain = _scan_py.scan_chain
        BACKEND = "python"

py_scan_chain = _scan_py.scan_chain

__all__ = ["BACKEND", "py_scan_chain", "scan_chain"]
