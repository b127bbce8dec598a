"""Selects the F_p elimination kernel at import time.

The compiled extension is used when it was built; ``SCOTTPERSIST_PURE=1``
forces the pure-Python kernel.
"""
import os

from . import _fpkernel_py

if os.environ.get("SCOTTPERSIST_PURE") == "1":
    _kernel = _fpkernel_py
    COMPILED = False
else:
    try:
        from . import _fpkernel as _kernel  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        _kernel = _fpkernel_py
        COMPILED = False

rref_mod = _kernel.rref_mod
