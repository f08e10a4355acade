"""Kernel dispatch: the compiled extension when it is importable, else pure Python.

Set ``SECONDHAM_PURE_PYTHON=1`` to force the fallback (used by the tests that
check both backends agree).
"""
import os

from . import _pyspeedups as python_backend

compiled_backend = None
if os.environ.get("SECONDHAM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _speedups as compiled_backend
    except ImportError:
        compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

hc_enumerate = _impl.hc_enumerate
lollipop_walk = _impl.lollipop_walk
approx_scan = _impl.approx_scan

__all__ = ["BACKEND", "hc_enumerate", "lollipop_walk", "approx_scan",
           "python_backend", "compiled_backend"]
