"""Hot-kernel backend selection.

The compiled Cython core is preferred; the pure numpy/Python fallback is
used when the extension is missing or when ``VRACSPAN_KERNELS=python`` is
set.  Both expose the same functions with identical semantics.
"""

import os

from . import _pure

if os.environ.get("VRACSPAN_KERNELS", "").lower() in ("python", "pure"):
    _impl = _pure
    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pure
        BACKEND = "python"

disk_adjacency = _impl.disk_adjacency
region_minima = _impl.region_minima
rewire = _impl.rewire
half_theta6_select = _impl.half_theta6_select
crossing_pairs = _impl.crossing_pairs
dijkstra = _impl.dijkstra


def backends() -> dict:
    """All importable backends, keyed by name (for tests and benchmarks)."""
    found = {"python": _pure}
    try:
        from . import _core

        found["cython"] = _core
    except ImportError:
        pass
    return found
