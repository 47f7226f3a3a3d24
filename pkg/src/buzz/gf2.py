"""Small Z/2 linear algebra kit.

Vectors are Python ints used as bitsets (bit ``i`` set = coordinate ``i`` is 1).
Plain Gaussian elimination; meant for oracles and diagnostics, not speed.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np


def to_bits(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def matrix_columns(m: np.ndarray) -> list[int]:
    """Columns of a 0/1 matrix as bitsets over row indices."""
    m = np.asarray(m) & 1
    return [to_bits(np.flatnonzero(m[:, j])) for j in range(m.shape[1])]


class Basis:
    """Incrementally built echelon basis, keyed by leading (highest) bit."""

    def __init__(self):
        self.rows: dict[int, int] = {}

    def reduce(self, v: int) -> int:
        rows = self.rows
        while v:
            top = v.bit_length() - 1
            r = rows.get(top)
            if r is None:
                return v
            v ^= r
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; returns True if it was independent."""
        v = self.reduce(v)
        if v:
            self.rows[v.bit_length() - 1] = v
            return True
        return False

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self):
        return len(self.rows)


def rank(vectors: Iterable[int]) -> int:
    b = Basis()
    for v in vectors:
        b.add(v)
    return len(b)


def kernel(columns: list[int]) -> list[int]:
    """Basis of the null space of the matrix with the given columns.

    Returned vectors are bitsets over column indices.
    """
    rows: dict[int, tuple[int, int]] = {}  # pivot bit -> (reduced column, combination)
    ker = []
    for j, col in enumerate(columns):
        v, comb = col, 1 << j
        while v:
            top = v.bit_length() - 1
            hit = rows.get(top)
            if hit is None:
                break
            v ^= hit[0]
            comb ^= hit[1]
        if v:
            rows[v.bit_length() - 1] = (v, comb)
        else:
            ker.append(comb)
    return ker


def apply(columns: list[int], x: int) -> int:
    """Matrix-vector product: XOR of the columns selected by bitset ``x``."""
    out = 0
    j = 0
    while x:
        if x & 1:
            out ^= columns[j]
        x >>= 1
        j += 1
    return out
