"""Backend selection for the exhaustive-search kernels.

The compiled extension is used when it imports; otherwise the pure-Python
twin.  Setting ``SPARSESEP_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from sparsesep import _pykernels

if os.environ.get("SPARSESEP_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from sparsesep import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykernels

BACKEND: str = _impl.BACKEND

reach = _impl.reach
packable = _impl.packable
separator_search = _impl.separator_search
treewidth_dp = _impl.treewidth_dp
strong_col_dp = _impl.strong_col_dp
min_vertex_expansion = _impl.min_vertex_expansion


def available_backends() -> dict:
    """Map of backend name to kernel module, for benchmarks and cross-checks."""
    out = {"python": _pykernels}
    try:
        from sparsesep import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return out
    out["cython"] = _kernels
    return out
