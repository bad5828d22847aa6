"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``DICKEBEC_PURE_PYTHON`` is set to a non-empty value
other than ``0``, the pure-Python twin is used.
"""

import os

if os.environ.get("DICKEBEC_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:  # extension not built
        from . import _kernels_py as kernels

BACKEND = kernels.BACKEND

__all__ = ["kernels", "BACKEND"]
