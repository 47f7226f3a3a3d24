"""Simplicial complexes, Vietoris-Rips construction and brute-force Z/2 homology."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from . import gf2

Simplex = tuple  # strictly increasing tuple of global vertex ids


def simplex_key(s: Simplex) -> tuple:
    """Canonical order: by dimension, then lexicographic by vertices."""
    return (len(s), s)


def facets(s: Simplex) -> list[Simplex]:
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


@dataclass(frozen=True)
class SimplicialComplex:
    simplices: frozenset

    @classmethod
    def from_simplices(cls, simplices: Iterable[Sequence[int]], close: bool = False) -> "SimplicialComplex":
        out = set()
        for s in simplices:
            s = tuple(sorted(int(v) for v in s))
            if len(set(s)) != len(s) or not s:
                raise ValueError(f"not a simplex: {s}")
            if close:
                for k in range(1, len(s) + 1):
                    out.update(combinations(s, k))
            else:
                out.add(s)
        return cls(frozenset(out))

    @property
    def max_dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def of_dim(self, p: int) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == p + 1)

    def vertices(self) -> list[int]:
        return sorted(s[0] for s in self.simplices if len(s) == 1)

    def is_face_closed(self) -> bool:
        return all(f in self.simplices for s in self.simplices for f in facets(s))

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, s):
        return tuple(s) in self.simplices

    def __iter__(self):
        return iter(sorted(self.simplices, key=simplex_key))


def rips_complex(distances: np.ndarray, r: float, max_dim: int, vertex_ids: Sequence[int] | None = None) -> SimplicialComplex:
    """Vietoris-Rips complex at scale ``r`` (closed: distance <= r).

    Vertices are named by ``vertex_ids`` (defaults to matrix indices). Higher
    simplices come from clique expansion over higher-numbered neighbours.
    """
    return SimplicialComplex(frozenset(_rips_simplices(distances, r, max_dim, vertex_ids)))


def _rips_simplices(distances, r, max_dim, vertex_ids=None) -> list[Simplex]:
    D = np.asarray(distances, dtype=float)
    n = D.shape[0]
    if max_dim < 0 or r < 0:
        raise ValueError("need max_dim >= 0 and r >= 0")
    ids = np.arange(n) if vertex_ids is None else np.asarray(vertex_ids, dtype=np.int64)
    # work in id order so that index tuples map to sorted id tuples
    order = np.argsort(ids, kind="stable")
    ids = [int(v) for v in ids[order]]
    D = D[np.ix_(order, order)]
    adj = D <= r
    up = []
    for i in range(n):
        nb = np.flatnonzero(adj[i, i + 1:]) + i + 1
        up.append(gf2.to_bits(nb.tolist()))

    out: list[Simplex] = []

    def expand(simplex: tuple, cand: int):
        out.append(tuple(ids[i] for i in simplex))
        if len(simplex) > max_dim:
            return
        while cand:
            low = cand & -cand
            j = low.bit_length() - 1
            cand ^= low
            expand(simplex + (j,), cand & up[j])

    for i in range(n):
        expand((i,), up[i])
    return out


def boundary_matrix(complex: SimplicialComplex, p: int) -> np.ndarray:
    """Z/2 boundary matrix of ``complex`` from p-chains to (p-1)-chains.

    Rows and columns follow the lexicographic order of ``of_dim``.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    rows = complex.of_dim(p - 1)
    cols = complex.of_dim(p)
    index = {s: i for i, s in enumerate(rows)}
    m = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    for j, s in enumerate(cols):
        for f in facets(s):
            m[index[f], j] = 1
    return m


def _boundary_rank(complex: SimplicialComplex, p: int) -> int:
    cols = complex.of_dim(p)
    if p < 1 or not cols:
        return 0
    index = {s: i for i, s in enumerate(complex.of_dim(p - 1))}
    return gf2.rank(gf2.to_bits(index[f] for f in facets(s)) for s in cols)


def betti_numbers(complex: SimplicialComplex, max_p: int) -> list[int]:
    """Z/2 Betti numbers ``[b_0, ..., b_max_p]`` by Gaussian elimination."""
    ranks = [_boundary_rank(complex, p) for p in range(max_p + 2)]
    return [len(complex.of_dim(p)) - ranks[p] - ranks[p + 1] for p in range(max_p + 1)]


def connected_components(complex: SimplicialComplex) -> int:
    """Component count via union-find over edges."""
    ds = DisjointSet(complex.vertices())
    for s in complex.simplices:
        if len(s) == 2:
            ds.merge(s[0], s[1])
    return ds.n_subsets
