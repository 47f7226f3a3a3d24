"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

import itertools
import math

import numpy as np

from buzz import gf2
from buzz.complexes import facets
from buzz.zigzag_engine import PersistencePoint


def brute_distances(points) -> np.ndarray:
    pts = [tuple(map(float, p)) for p in np.atleast_2d(points)]
    n = len(pts)
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            D[i, j] = math.sqrt(sum((a - b) ** 2 for a, b in zip(pts[i], pts[j])))
    return D


def brute_rips(D, r, max_dim, ids=None) -> set:
    """Every vertex subset of size <= max_dim + 1 with all pairs within r."""
    n = len(D)
    ids = list(range(n)) if ids is None else [int(v) for v in ids]
    out = set()
    for k in range(1, max_dim + 2):
        for sub in itertools.combinations(range(n), k):
            if all(D[a][b] <= r for a, b in itertools.combinations(sub, 2)):
                out.add(tuple(sorted(ids[i] for i in sub)))
    return out


def brute_greedy(points, k, seed=0) -> list[int]:
    """O(k n^2) furthest point sampling, lowest index on ties."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    chosen = [seed]
    while len(chosen) < k:
        best, best_d = None, -1.0
        for i in range(len(pts)):
            if i in chosen:
                continue
            d = min(math.dist(pts[i], pts[c]) for c in chosen)
            if d > best_d:
                best, best_d = i, d
        chosen.append(best)
    return chosen


def position_complexes_brute(clouds, radii, max_dim) -> list[set]:
    """Rips complexes at positions 0, 0.5, ..., n from subset enumeration."""
    out = []
    n = len(clouds) - 1
    for i in range(n + 1):
        c = clouds[i]
        out.append(brute_rips(brute_distances(c.coords), radii[i], max_dim, c.ids))
        if i < n:
            pts = np.vstack([clouds[i].coords, clouds[i + 1].coords])
            ids = list(clouds[i].ids) + list(clouds[i + 1].ids)
            out.append(brute_rips(brute_distances(pts), max(radii[i], radii[i + 1]), max_dim, ids))
    return out


# -- zigzag barcode from generalized ranks ----------------------------------

class _Homology:
    """H_p of one complex with chains indexed globally."""

    def __init__(self, simplices: set, p: int, index: dict):
        self.index = index
        cyc_cols, cyc_ids = [], []
        for s in simplices:
            if len(s) == p + 1:
                cyc_ids.append(s)
                cyc_cols.append(gf2.to_bits(index[f] for f in facets(s)) if p > 0 else 0)
        cycles = []
        for comb in gf2.kernel(cyc_cols):
            cycles.append(gf2.to_bits(index[cyc_ids[j]] for j in range(len(cyc_ids)) if comb >> j & 1))
        bounds = [gf2.to_bits(index[f] for f in facets(s)) for s in simplices if len(s) == p + 2]
        self.B = gf2.Basis()
        for b in bounds:
            self.B.add(b)
        self.reps = []
        span = gf2.Basis()
        span.rows = dict(self.B.rows)
        for z in cycles:
            if span.add(z):
                self.reps.append(z)
        self.dim = len(self.reps)
        # coordinates: echelon basis over [B | reps] with tracked rep-combination
        self._rows: dict[int, tuple[int, int]] = {}
        for v in self.B.rows.values():
            self._insert(v, 0)
        for j, z in enumerate(self.reps):
            self._insert(z, 1 << j)

    def _insert(self, v, comb):
        while v:
            top = v.bit_length() - 1
            hit = self._rows.get(top)
            if hit is None:
                self._rows[top] = (v, comb)
                return
            v ^= hit[0]
            comb ^= hit[1]
        raise AssertionError("dependent generator")

    def coords(self, z: int) -> int:
        comb = 0
        while z:
            top = z.bit_length() - 1
            v, c = self._rows[top]
            z ^= v
            comb ^= c
        return comb


def brute_zigzag(schedule, max_p: int = 1) -> list[PersistencePoint]:
    """Barcode by Mobius inversion of generalized ranks over all segments."""
    L = 2 * schedule.n + 1
    complexes = [set(schedule.live_at(h / 2).simplices) for h in range(L)]
    everything = set().union(*complexes)
    points = []
    for p in range(max_p + 1):
        index = {}
        for s in sorted(everything, key=lambda s: (len(s), s)):
            if len(s) in (p, p + 1):
                index[s] = len(index)
        H = [_Homology(K, p, index) for K in complexes]
        arrows = []
        for h in range(L - 1):
            a, b = complexes[h], complexes[h + 1]
            if a <= b:
                src, dst, fwd = H[h], H[h + 1], True
            elif b <= a:
                src, dst, fwd = H[h + 1], H[h], False
            else:
                raise ValueError("oracle needs every grid step to be an inclusion")
            mat = [dst.coords(z) for z in src.reps]  # image of each source generator
            arrows.append((fwd, mat))

        def rank(a, b):
            if a < 0 or b >= L:
                return 0
            offs, tot = [], 0
            for h in range(a, b + 1):
                offs.append(tot)
                tot += H[h].dim
            if tot == 0:
                return 0

            def emb(h, x):
                return x << offs[h - a]

            # limit: kernel of the compatibility constraints, variables = all coords
            cons = []  # each constraint: bitset over variables (per output coordinate)
            rel = gf2.Basis()  # colimit relations
            for h in range(a, b):
                fwd, mat = arrows[h]
                s, t = (h, h + 1) if fwd else (h + 1, h)
                # x_t = M x_s  <=> for each coordinate c of t: x_t[c] + sum_j M[c,j] x_s[j] = 0
                for c in range(H[t].dim):
                    row = emb(t, 1 << c)
                    for j, img in enumerate(mat):
                        if img >> c & 1:
                            row ^= emb(s, 1 << j)
                    cons.append(row)
                for j, img in enumerate(mat):
                    rel.add(emb(s, 1 << j) ^ emb(t, img))
            # kernel of the constraint matrix (rows = cons, cols = variables)
            cols = []
            for v in range(tot):
                cols.append(gf2.to_bits(i for i, row in enumerate(cons) if row >> v & 1))
            lim = gf2.kernel(cols)
            base = len(rel)
            mask_a = (1 << H[a].dim) - 1
            for x in lim:
                rel.add(emb(a, x & mask_a))
            return len(rel) - base

        for a in range(L):
            for b in range(a, L):
                m = rank(a, b) - rank(a - 1, b) - rank(a, b + 1) + rank(a - 1, b + 1)
                assert m >= 0, (p, a, b, m)
                death = (schedule.n + 1) if b == L - 1 else (b + 1) / 2
                points += [PersistencePoint(p, a / 2, float(death))] * m
    return sorted(points)
