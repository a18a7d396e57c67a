"""Select the vertex-enumeration kernels at import time.

The compiled module is used when it was built and ``QPK_PURE_PYTHON`` is not
set.  Overflow inside the compiled path falls back to the pure-Python
routine for that call only.
"""

from __future__ import annotations

import os

from . import _vertex_py

try:
    from . import _vertex_c
except ImportError:  # extension not built
    _vertex_c = None

if _vertex_c is not None and not os.environ.get("QPK_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"


def row_reduce(rows, n, backend=None):
    backend = backend or BACKEND
    if backend == "cython" and _vertex_c is not None:
        try:
            return _vertex_c.row_reduce(rows, n)
        except OverflowError:
            pass
    return _vertex_py.row_reduce(rows, n)


def basic_solutions(rows, n, backend=None):
    backend = backend or BACKEND
    if backend == "cython" and _vertex_c is not None:
        try:
            return _vertex_c.basic_solutions(rows, n)
        except OverflowError:
            pass
    return _vertex_py.basic_solutions(rows, n)


def available() -> list[str]:
    return ["python"] + (["cython"] if _vertex_c is not None else [])
