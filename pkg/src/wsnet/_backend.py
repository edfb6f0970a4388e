"""Pick the compiled kernels when available.

Set ``WSNET_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

if os.environ.get("WSNET_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as kernels

    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels

        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as kernels

        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
