"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise, or when
``MATCHLAB_PURE_PYTHON=1`` is set, the pure-Python fallback is used.
``BACKEND`` names the active one.
"""

import os

from . import _pykernels

if os.environ.get("MATCHLAB_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

greedy_tree = _impl.greedy_tree
greedy_graph = _impl.greedy_graph
greedy_views = _impl.greedy_views

__all__ = ["BACKEND", "greedy_tree", "greedy_graph", "greedy_views", "backends"]


def backends() -> dict:
    """All importable backends by name; used by the benchmark and parity tests."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels

        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
