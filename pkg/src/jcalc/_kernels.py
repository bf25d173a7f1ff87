"""Kernel selection: the compiled ``_core`` when importable, else pure Python.

Set ``JCALC_PURE=1`` in the environment to force the Python kernels.
"""

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("JCALC_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core
    except ImportError:  # extension not built
        _core = None
    else:
        BACKEND = "cython"
else:
    _core = None

# the largest dense table magnus_dense may allocate (entries)
MAX_DENSE = 1 << 22


def reduce_code(code):
    if _core is not None:
        return _core.reduce_code(code)
    return _pykernels.reduce_code(code)


def magnus_dense(code, n, bound):
    size = sum(n ** d for d in range(bound + 1))
    if size > MAX_DENSE:
        raise ValueError(f"truncation bound {bound} too large for rank {n}")
    if _core is not None:
        try:
            return _core.magnus_dense(code, n, bound)
        except OverflowError:
            pass
    return _pykernels.magnus_dense(code, n, bound)
