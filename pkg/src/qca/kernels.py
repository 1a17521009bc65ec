"""Kernel selection: the compiled extension when importable, else the
pure-Python implementation.  Set QCA_PURE=1 to force the fallback."""

import os

from . import _kernels_py

if os.environ.get("QCA_PURE") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

matmul = _impl.matmul
solve = _impl.solve
inverse = _impl.inverse
det = _impl.det
