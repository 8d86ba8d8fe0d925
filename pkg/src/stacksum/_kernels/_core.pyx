# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics mirror ``pure.py`` bit for bit."""

import numpy as np

BACKEND_NAME = "compiled"

INF_COUNT = 1 << 40


def reach_pairs(weights, cap):
    cdef Py_ssize_t size = cap + 1
    reach_arr = np.zeros((size, size), dtype=np.uint8)
    ann_arr = np.zeros((size, size), dtype=np.int32)
    snap_arr = np.empty((size, size), dtype=np.uint8)
    cdef unsigned char[:, ::1] reach = reach_arr
    cdef unsigned char[:, ::1] snap = snap_arr
    cdef int[:, ::1] ann = ann_arr
    cdef Py_ssize_t j, a, b, w, n = len(weights)
    cdef long long wl

    reach[0, 0] = 1
    for j in range(n):
        wl = weights[j]
        if wl < 1 or wl > cap:
            continue
        w = <Py_ssize_t> wl
        snap[:, :] = reach
        # Before-axis move: (a - w, b) -> (a, b).
        for a in range(cap, w - 1, -1):
            for b in range(size):
                if snap[a - w, b] and not reach[a, b]:
                    reach[a, b] = 1
                    ann[a, b] = j + 1
        # After-axis move: (a, b - w) -> (a, b).
        for a in range(size):
            for b in range(cap, w - 1, -1):
                if snap[a, b - w] and not reach[a, b]:
                    reach[a, b] = 1
                    ann[a, b] = -(j + 1)
    return reach_arr, ann_arr


def new_min_counts(cap):
    counts = np.full(cap + 1, INF_COUNT, dtype=np.int64)
    counts[0] = 0
    return counts


def extend_min_counts(counts, weights):
    out_arr = counts.copy()
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t cap = out_arr.shape[0] - 1
    cdef Py_ssize_t t, w
    cdef long long wl, cand
    for wv in weights:
        wl = wv
        if wl < 1 or wl > cap:
            continue
        w = <Py_ssize_t> wl
        # Descending scan reads only pre-item values: 0/1 semantics.
        for t in range(cap, w - 1, -1):
            cand = out[t - w] + 1
            if cand < out[t]:
                out[t] = cand
    return out_arr


def fill_for_capacity(desc_weights, cap):
    out_arr = np.zeros(cap + 1, dtype=np.int64)
    cdef long long[::1] out = out_arr
    ws_arr = np.asarray(desc_weights, dtype=np.int64)
    cdef long long[::1] ws = ws_arr
    cdef Py_ssize_t r, i, n = ws_arr.shape[0]
    cdef long long residual, total
    for r in range(1, cap + 1):
        residual = r
        total = 0
        for i in range(n):
            if ws[i] <= residual:
                total += ws[i]
                residual -= ws[i]
                if residual == 0:
                    break
        out[r] = total
    return out_arr
