"""Kernel backend selection.

The compiled extension is preferred when present; set ``STACKSUM_PURE=1``
to force the pure-Python fallback (useful for debugging and for the
backend benchmark).  Both backends implement the same contracts and return
bit-identical arrays.
"""

from __future__ import annotations

import os

if os.environ.get("STACKSUM_PURE", "") not in ("", "0"):
    from . import pure as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import pure as _impl  # type: ignore[no-redef]

BACKEND_NAME: str = _impl.BACKEND_NAME
INF_COUNT: int = _impl.INF_COUNT

reach_pairs = _impl.reach_pairs
new_min_counts = _impl.new_min_counts
extend_min_counts = _impl.extend_min_counts
fill_for_capacity = _impl.fill_for_capacity

__all__ = [
    "BACKEND_NAME",
    "INF_COUNT",
    "reach_pairs",
    "new_min_counts",
    "extend_min_counts",
    "fill_for_capacity",
]
