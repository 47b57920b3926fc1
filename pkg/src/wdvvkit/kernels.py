"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the pure-Python ``_pykernels`` module is loaded.  Setting the environment
variable ``WDVVKIT_PURE_PYTHON=1`` forces the fallback.
"""
import os

if os.environ.get("WDVVKIT_PURE_PYTHON", "") not in ("", "0"):
    from wdvvkit import _pykernels as _backend
else:
    try:
        from wdvvkit import _ckernels as _backend
    except ImportError:  # extension not built
        from wdvvkit import _pykernels as _backend

add = _backend.add
mul = _backend.mul
diff = _backend.diff
evaluate = _backend.evaluate
BACKEND = _backend.BACKEND
