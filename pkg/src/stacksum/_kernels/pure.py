"""Pure-Python kernels for the reaching DPs and the greedy fill table.

This module is the reference implementation of the kernel contracts; the
compiled extension in ``_core.pyx`` must produce bit-identical outputs.
The shared conventions are:

* ``reach_pairs`` processes items in list order.  For each item it first
  applies the before-axis move (row index grows), then the after-axis move
  (column index grows), both reading the pre-item snapshot so an item is
  used at most once per cell.  Annotations are first-writer-wins:
  ``+(j+1)`` marks a cell first set by item ``j`` on the before axis,
  ``-(j+1)`` on the after axis, ``0`` means never set (the origin stays 0).
* ``extend_min_counts`` is a 0/1 min-cardinality subset-sum extension:
  entry ``t`` holds the fewest items summing exactly to ``t`` (``INF`` if
  unreachable).
* Items with weight outside ``1..cap`` cannot touch any cell and are
  skipped.

The reachability rows are kept as Python big-int bitmasks, which keeps the
fallback usable at moderate capacities.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

BACKEND_NAME = "pure"

#: Sentinel for "unreachable" in min-count arrays; small enough that +1
#: never overflows int64.
INF_COUNT = 1 << 40


def _write_annotations(ann_row: np.ndarray, bits: int, value: int) -> None:
    while bits:
        low = bits & -bits
        ann_row[low.bit_length() - 1] = value
        bits ^= low


def _rows_to_grid(rows: list[int], cap: int) -> np.ndarray:
    nbytes = cap // 8 + 1
    packed = np.frombuffer(
        b"".join(r.to_bytes(nbytes, "little") for r in rows), dtype=np.uint8
    ).reshape(len(rows), nbytes)
    return np.unpackbits(packed, axis=1, bitorder="little")[:, : cap + 1]


def reach_pairs(weights: Sequence[int], cap: int) -> tuple[np.ndarray, np.ndarray]:
    """Reachable disjoint-pair sums of ``weights`` up to ``cap`` per axis.

    Returns ``(reach, ann)``: ``reach[a, b]`` is 1 iff two disjoint subsets
    with sums ``a`` and ``b`` exist, and ``ann`` carries the first-writer
    predecessor annotations described in the module docstring.
    """
    size = cap + 1
    full_mask = (1 << size) - 1
    rows = [0] * size
    rows[0] = 1
    ann = np.zeros((size, size), dtype=np.int32)

    for j, w in enumerate(weights):
        if not 1 <= w <= cap:
            continue
        old = rows[:]
        # Before-axis move: (a - w, b) -> (a, b).
        for a in range(cap, w - 1, -1):
            src = old[a - w]
            if src:
                new = src & ~rows[a]
                if new:
                    rows[a] |= new
                    _write_annotations(ann[a], new, j + 1)
        # After-axis move: (a, b - w) -> (a, b).
        shift_mask = full_mask
        for a in range(size):
            src = old[a]
            if src:
                new = ((src << w) & shift_mask) & ~rows[a]
                if new:
                    rows[a] |= new
                    _write_annotations(ann[a], new, -(j + 1))

    return _rows_to_grid(rows, cap), ann


def new_min_counts(cap: int) -> np.ndarray:
    """Fresh min-count array: only the empty sum is reachable."""
    counts = np.full(cap + 1, INF_COUNT, dtype=np.int64)
    counts[0] = 0
    return counts


def extend_min_counts(counts: np.ndarray, weights: Sequence[int]) -> np.ndarray:
    """Return a copy of ``counts`` extended by ``weights`` (0/1 semantics)."""
    out = counts.copy()
    cap = len(out) - 1
    for w in weights:
        if 1 <= w <= cap:
            # One statement per item: the RHS is evaluated before the
            # assignment, so each item is used at most once.
            out[w:] = np.minimum(out[w:], out[: cap + 1 - w] + 1)
    return out


def fill_for_capacity(desc_weights: Sequence[int], cap: int) -> np.ndarray:
    """Greedy fill totals for every capacity ``0..cap``.

    ``desc_weights`` must already be sorted in non-increasing order; entry
    ``r`` of the result is the total weight the pack-if-it-fits scan places
    into capacity ``r``.
    """
    out = np.zeros(cap + 1, dtype=np.int64)
    for r in range(1, cap + 1):
        residual = r
        total = 0
        for w in desc_weights:
            if w <= residual:
                total += w
                residual -= w
                if residual == 0:
                    break
        out[r] = total
    return out
