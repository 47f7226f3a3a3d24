"""Array view of a schedule: one row per presence run ("instance").

Times are half-steps ``h = 2 t``. Grid positions are ``0..end`` with
``end = 2 n``; a run live through the last position closes at ``end + 2``.
"""

from __future__ import annotations

import numpy as np


class MalformedSchedule(ValueError):
    pass


class InstanceTable:
    def __init__(self, simplices, times, n_snapshots: int, top: int | None = None):
        if len(simplices) != len(times):
            raise MalformedSchedule(f"{len(simplices)} simplices but {len(times)} times lists")
        if n_snapshots < 1:
            raise MalformedSchedule("n_snapshots must be >= 1")
        end = 2 * (n_snapshots - 1)
        self.end = end
        keep = [i for i, s in enumerate(simplices) if top is None or len(s) - 1 <= top]
        width = max((len(simplices[i]) for i in keep), default=1)
        m = len(keep)
        verts = np.full((m, width), -1, dtype=np.int64)
        dim = np.empty(m, dtype=np.int64)
        inst_s, inst_a, inst_d = [], [], []
        for g, i in enumerate(keep):
            s = simplices[i]
            if not len(s) or any(a >= b for a, b in zip(s, s[1:])) or s[0] < 0:
                raise MalformedSchedule(f"simplex {list(s)} is not a strictly increasing list of ids")
            verts[g, :len(s)] = s
            dim[g] = len(s) - 1
            ts = times[i]
            if len(ts) == 0 or len(ts) % 2:
                raise MalformedSchedule(f"simplex {list(s)} has odd-length or empty times list {list(ts)}")
            prev = -1
            for k, t in enumerate(ts):
                h = 2 * t
                if h != int(h):
                    raise MalformedSchedule(f"simplex {list(s)} time {t} is off the half-integer grid")
                h = int(h)
                if not (0 <= h <= end or h == end + 2):
                    raise MalformedSchedule(f"simplex {list(s)} time {t} is outside the grid 0..{n_snapshots}")
                if h <= prev:
                    raise MalformedSchedule(f"simplex {list(s)} times {list(ts)} are not strictly increasing")
                if k % 2 == 0 and h > end:
                    raise MalformedSchedule(f"simplex {list(s)} appears after the final position")
                prev = h
            for k in range(0, len(ts), 2):
                inst_s.append(g)
                inst_a.append(round(2 * ts[k]))
                inst_d.append(round(2 * ts[k + 1]))
        self.verts, self.dim = verts, dim
        self.simplex_index = np.array(keep, dtype=np.int64)
        # canonical rank: by dimension then lexicographic
        self.rank = np.empty(m, dtype=np.int64)
        self.rank[np.lexsort(tuple(verts[:, j] for j in range(width - 1, -1, -1)) + (dim,))] = np.arange(m)
        self._codes = self._encode(verts)
        if m and len(np.unique(self._codes)) != m:
            raise MalformedSchedule("a simplex is listed twice")
        inst_s = np.array(inst_s, dtype=np.int64)
        inst_a = np.array(inst_a, dtype=np.int64)
        inst_d = np.array(inst_d, dtype=np.int64)
        order = np.lexsort((inst_a, inst_s))
        self.inst_simplex = inst_s[order]
        self.inst_appear = inst_a[order]
        self.inst_disappear = inst_d[order]
        self.inst_dim = dim[self.inst_simplex]

    def __len__(self):
        return self.inst_simplex.shape[0]

    def _encode(self, rows: np.ndarray) -> np.ndarray:
        base = int(self.verts.max(initial=0)) + 2
        if base ** rows.shape[1] >= 2 ** 62:
            raise MalformedSchedule("vertex ids too large to index")  # ~2**20 ids with triangles
        code = np.zeros(rows.shape[0], dtype=np.int64)
        for j in range(rows.shape[1]):
            code = code * base + (rows[:, j] + 1)
        return code

    def facet_instances(self) -> tuple[np.ndarray, list[str]]:
        """Instance of every facet that is live when each instance appears.

        Returns an ``(N, max_dim + 1)`` array (``-1`` padding; vertices have no
        facets) and a list of face-closure violations.
        """
        N = len(self)
        width = self.verts.shape[1]
        out = np.full((N, width), -1, dtype=np.int64)
        problems: list[str] = []
        if N == 0:
            return out, problems
        sorted_codes = np.argsort(self._codes)
        codes_sorted = self._codes[sorted_codes]
        W = self.end + 3
        inst_key = self.inst_simplex * W + self.inst_appear  # already ascending
        for k in range(1, width):
            xs = np.flatnonzero(self.inst_dim == k)
            if xs.size == 0:
                continue
            rows = self.verts[self.inst_simplex[xs], :k + 1]
            for j in range(k + 1):
                facet = np.delete(rows, j, axis=1)
                padded = np.full((facet.shape[0], width), -1, dtype=np.int64)
                padded[:, :k] = facet
                code = self._encode(padded)
                pos = np.searchsorted(codes_sorted, code)
                pos = np.minimum(pos, codes_sorted.shape[0] - 1)
                found = codes_sorted[pos] == code
                if not found.all():
                    bad = xs[np.flatnonzero(~found)[0]]
                    problems.append(self._describe(bad, facet[np.flatnonzero(~found)[0]], never=True))
                    continue
                fsimp = sorted_codes[pos]
                fi = np.searchsorted(inst_key, fsimp * W + self.inst_appear[xs], side="right") - 1
                ok = (fi >= 0) & (self.inst_simplex[np.maximum(fi, 0)] == fsimp)
                ok &= self.inst_disappear[np.maximum(fi, 0)] >= self.inst_disappear[xs]
                if not ok.all():
                    b = np.flatnonzero(~ok)[0]
                    problems.append(self._describe(xs[b], facet[b]))
                out[xs, j] = fi
        return out, problems

    def _describe(self, x, facet, never=False) -> str:
        s = [int(v) for v in self.verts[self.inst_simplex[x]] if v >= 0]
        f = [int(v) for v in facet]
        if never:
            return f"face {f} of {s} is never live"
        a, d = self.inst_appear[x] / 2, self.inst_disappear[x] / 2
        return f"face closure violated: {s} is live on [{a}, {d}) but its face {f} is not"

    def counts(self) -> list[int]:
        diff = np.zeros(self.end + 3, dtype=np.int64)
        np.add.at(diff, self.inst_appear, 1)
        np.add.at(diff, np.minimum(self.inst_disappear, self.end + 1), -1)
        return np.cumsum(diff)[: self.end + 1].tolist()
