"""Z/2 persistence pairs by coboundary reduction with clearing.

Works on the anti-transpose of the boundary matrix: column ``c`` stands for
cell ``n-1-c`` and holds its cofaces (as ``n-1-j``). Dimensions are processed
from low to high; each pivot found in dimension ``d`` clears the matching
column of dimension ``d+1``. The pairs are the same as for the boundary
matrix, but Rips-like inputs need far fewer column additions this way.
"""

from __future__ import annotations

import numpy as np
from numba import njit
from numba.typed import List


@njit(cache=True)
def _symdiff(a, b):
    out = np.empty(a.shape[0] + b.shape[0], dtype=np.int64)
    i = j = k = 0
    while i < a.shape[0] and j < b.shape[0]:
        if a[i] < b[j]:
            out[k] = a[i]
            i += 1
            k += 1
        elif b[j] < a[i]:
            out[k] = b[j]
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < a.shape[0]:
        out[k] = a[i]
        i += 1
        k += 1
    while j < b.shape[0]:
        out[k] = b[j]
        j += 1
        k += 1
    return out[:k]


@njit(cache=True)
def _reduce(n, order, indptr, indices):
    owner = np.full(n, -1, dtype=np.int64)  # pivot row -> slot in store
    cleared = np.zeros(n, dtype=np.bool_)
    store = List()
    store.append(np.zeros(0, dtype=np.int64))
    births = np.empty(n, dtype=np.int64)
    deaths = np.empty(n, dtype=np.int64)
    m = 0
    for c in order:
        if cleared[c]:
            continue
        col = indices[indptr[c]:indptr[c + 1]].copy()
        while col.shape[0] > 0:
            slot = owner[col[-1]]
            if slot < 0:
                break
            col = _symdiff(col, store[slot])
        if col.shape[0] > 0:
            low = col[-1]
            store.append(col)
            owner[low] = len(store) - 1
            cleared[low] = True
            births[m] = n - 1 - c
            deaths[m] = n - 1 - low
            m += 1
    return births[:m], deaths[:m]


def persistence_pairs(dims: np.ndarray, faces: np.ndarray, cofaces: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pairs of a face-ordered filtration given as (face, coface) incidences.

    Returns ``(births, deaths)`` arrays of cell indices.
    """
    dims = np.asarray(dims, dtype=np.int64)
    n = dims.shape[0]
    col = n - 1 - np.asarray(faces, dtype=np.int64)
    row = n - 1 - np.asarray(cofaces, dtype=np.int64)
    perm = np.lexsort((row, col))
    indices = np.ascontiguousarray(row[perm])
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(col, minlength=n), out=indptr[1:])
    anti_dims = dims[::-1]
    order = np.lexsort((np.arange(n), anti_dims))
    order = order[anti_dims[order] < dims.max()] if n else order
    return _reduce(n, order.astype(np.int64), indptr, indices)


@njit(cache=True)
def _spanning(rows, appear, disappear, order, end, n_rows):
    keep = np.zeros(rows.shape[0], dtype=np.bool_)
    owner = np.full(n_rows, -1, dtype=np.int64)
    for h in range(end + 1):
        store = List()
        store.append(np.zeros(0, dtype=np.int64))
        touched = List()
        touched.append(0)
        for c in order:
            if appear[c] > h or disappear[c] <= h:
                continue
            col = np.sort(rows[c])
            while col.shape[0] > 0:
                slot = owner[col[-1]]
                if slot < 0:
                    break
                col = _symdiff(col, store[slot])
            if col.shape[0] > 0:
                store.append(col)
                owner[col[-1]] = len(store) - 1
                touched.append(col[-1])
                keep[c] = True
        for r in touched:
            owner[r] = -1
        owner[0] = -1
    return keep


def spanning_columns(rows: np.ndarray, appear: np.ndarray, disappear: np.ndarray,
                     order: np.ndarray, end: int, n_rows: int) -> np.ndarray:
    """Columns that, at every position ``0..end``, span the live columns.

    ``rows[c]`` lists the (distinct) row indices of column ``c``; column ``c``
    is live on positions ``appear[c] <= h < disappear[c]``. Returns a mask.
    """
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.bool_)
    return _spanning(np.ascontiguousarray(rows, dtype=np.int64), appear.astype(np.int64),
                     disappear.astype(np.int64), order.astype(np.int64), int(end), int(n_rows))
