"""Zigzag persistence over Z/2 for simplex schedules.

The schedule is unrolled into a simplex-wise zigzag (per grid step: removals,
cofaces first, then insertions, faces first; everything still live is removed
after the last position). Its barcode is computed by the up-down reduction:

1. reorder to all insertions followed by all removals, treating every
   insertion of a simplex as its own cell;
2. cone off the removal half with an apex ``w``, which turns the up-down
   sequence into one ordinary filtration (cells, then cones over the removed
   cells in reverse removal order);
3. reduce that filtration once and translate every pair back to arrows of
   the original sequence, then to grid positions.

A pair whose two arrows end up out of order after step 3 belongs to the
dimension below (a class born by a removal and killed by an insertion).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from ._tables import InstanceTable, MalformedSchedule
from .complexes import betti_numbers, connected_components, facets
from .zigzag_builder import ZigzagSchedule, ScheduleError, validate_schedule
from . import _reduction


@dataclass(frozen=True, order=True)
class PersistencePoint:
    dim: int
    birth: float
    death: float


@dataclass(frozen=True)
class ZigzagDiagram:
    points: tuple
    n_snapshots: int
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(self.points)))

    def in_dim(self, p: int) -> list[PersistencePoint]:
        return [q for q in self.points if q.dim == p]

    def alive_at(self, t: float, p: int) -> int:
        return sum(1 for q in self.points if q.dim == p and q.birth <= t < q.death)

    def to_json(self) -> dict:
        return {
            "n_snapshots": self.n_snapshots,
            "points": [{"dim": q.dim, "birth": q.birth, "death": q.death} for q in self.points],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, obj: dict) -> "ZigzagDiagram":
        pts = [PersistencePoint(int(p["dim"]), float(p["birth"]), float(p["death"])) for p in obj["points"]]
        return cls(tuple(pts), int(obj["n_snapshots"]))

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path) -> "ZigzagDiagram":
        return cls.from_json(json.loads(Path(path).read_text()))

    def save_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["dim", "birth", "death"])
            for q in self.points:
                w.writerow([q.dim, q.birth, q.death])


def _grid_point(dim: int, first: int, last: int, end: int) -> PersistencePoint:
    """Point for a class live on half-step positions ``first..last``."""
    death = end + 2 if last == end else last + 1
    return PersistencePoint(dim, first / 2, death / 2)


def compute_zigzag(schedule: ZigzagSchedule, max_hom_dim: int = 1) -> ZigzagDiagram:
    """Interval decomposition of the homology zigzag induced by ``schedule``.

    A class live on positions ``t_a .. t_b`` is reported as
    ``(t_a, t_b + 0.5)``, or ``(t_a, n + 1)`` when ``t_b`` is the last
    position.
    """
    if max_hom_dim < 0 or max_hom_dim + 1 > schedule.max_dim:
        raise ValueError(
            f"max_hom_dim={max_hom_dim} needs simplices of dimension {max_hom_dim + 1}, "
            f"schedule is capped at {schedule.max_dim}"
        )
    top = max_hom_dim + 1  # higher simplices cannot change H_0..H_max_hom_dim
    try:
        table = InstanceTable(schedule.simplices, schedule.times, schedule.n_snapshots, top=top)
    except MalformedSchedule as exc:
        raise ScheduleError(f"invalid schedule: {exc}") from None
    faces, problems = table.facet_instances()
    if problems:
        raise ScheduleError(f"invalid schedule: {problems[0]}")
    if len(table.simplex_index) < len(schedule.simplices):
        diag = validate_schedule(schedule)
        if not diag.ok:
            raise ScheduleError(f"invalid schedule: {diag.violation}")

    end = table.end
    counts = table.counts()
    dim = table.inst_dim
    rank = table.rank[table.inst_simplex]
    appear, disappear = table.inst_appear, table.inst_disappear

    # -- sparsify the top dimension -----------------------------------------
    # H_{top-1} only sees the span of the top boundaries at each position, so
    # any top simplices whose boundaries span it position by position give the
    # same zigzag in every reported dimension. Rips unions are mostly filled
    # cliques, where this drops the bulk of the triangles.
    tops = np.flatnonzero(dim == top)
    if tops.size:
        mask = _reduction.spanning_columns(
            faces[tops, : top + 1], appear[tops], disappear[tops],
            np.argsort(rank[tops], kind="stable"), end, len(table),
        )
        kept = np.ones(len(table), dtype=bool)
        kept[tops[~mask]] = False
        new_index = np.cumsum(kept) - 1
        faces = np.where(faces >= 0, new_index[np.maximum(faces, 0)], -1)[kept]
        dim, rank, appear, disappear = dim[kept], rank[kept], appear[kept], disappear[kept]

    N = dim.shape[0]

    # -- unrolled single-simplex sequence ----------------------------------
    # per grid step: removals (cofaces first), then insertions (faces first)
    ins_order = np.lexsort((rank, dim, appear))
    del_order = np.lexsort((rank, -dim, disappear))
    sorted_a = appear[ins_order]
    sorted_d = disappear[del_order]
    steps = np.arange(N)
    ins_event = steps + np.searchsorted(sorted_d, sorted_a, side="right") + 1
    del_event = steps + np.searchsorted(sorted_a, sorted_d, side="left") + 1
    grid = np.arange(end + 1)
    block_end = np.searchsorted(sorted_a, grid, side="right") + np.searchsorted(sorted_d, grid, side="right")

    # -- coned filtration ---------------------------------------------------
    # 0: apex; 1..N: instances in insertion order; N+1..2N: cones over the
    # removed instances, last removed first.
    up = np.empty(N, dtype=np.int64)
    up[ins_order] = steps + 1
    cone = np.empty(N, dtype=np.int64)
    cone[del_order] = 2 * N - steps
    dims = np.zeros(2 * N + 1, dtype=np.int64)
    dims[up] = dim
    dims[cone] = dim + 1
    has = faces >= 0
    rows, cols = np.nonzero(has)
    fx = faces[rows, cols]
    vertex = np.flatnonzero(dim == 0)
    face_cells = np.concatenate([up[fx], up, cone[fx], np.zeros(vertex.size, dtype=np.int64)])
    coface_cells = np.concatenate([up[rows], cone, cone[rows], cone[vertex]])
    births, deaths = _reduction.persistence_pairs(dims, face_cells, coface_cells)

    # -- back to arrows, then to grid positions -----------------------------
    p = dims[births]
    rel = births > N  # both ends are cones: one dimension down, reversed
    gb = np.where(rel, deaths, births)
    gd = np.where(rel, births, deaths)
    p = p - rel

    def event(g):
        out = np.empty_like(g)
        lo = g <= N
        out[lo] = ins_event[g[lo] - 1]
        out[~lo] = del_event[2 * N - g[~lo]]
        return out

    b, d = event(gb), event(gd)
    flip = b > d
    b, d = np.where(flip, d, b), np.where(flip, b, d)
    p = p - flip
    keep = (p >= 0) & (p <= max_hom_dim)
    # live on unrolled complexes b .. d-1; keep grid positions among them
    first = np.searchsorted(block_end, b, side="left")
    last = np.searchsorted(block_end, d - 1, side="right") - 1
    keep &= first <= last
    points = [
        _grid_point(int(q), int(f), int(l), end)
        for q, f, l in zip(p[keep], first[keep], last[keep])
    ]
    meta = {"max_hom_dim": max_hom_dim, "radii": list(schedule.radii), "max_dim": schedule.max_dim,
            "counts": counts}
    return ZigzagDiagram(tuple(points), schedule.n_snapshots, meta)


def standard_persistence(additions: Iterable[tuple], n_snapshots: int, max_hom_dim: int | None = None) -> ZigzagDiagram:
    """Ordinary persistence of ``(simplex, grid time)`` additions.

    Additions must be listed faces first. Classes never killed die at
    ``n_snapshots`` (one past the last index). Zero-length pairs are dropped.
    """
    index: dict = {}
    order, times, cols = [], [], []
    for s, t in additions:
        s = tuple(s)
        if s in index:
            raise ValueError(f"simplex {s} added twice")
        try:
            col = {index[f] for f in facets(s)}
        except KeyError:
            raise ValueError(f"{s} added before its faces") from None
        if times and t < times[-1]:
            raise ValueError("additions must be in non-decreasing time order")
        index[s] = len(order)
        order.append(s)
        times.append(t)
        cols.append(col)
    # textbook left-to-right column reduction
    low_owner: dict[int, int] = {}
    paired = set()
    pts = []
    for j, col in enumerate(cols):
        while col:
            low = max(col)
            k = low_owner.get(low)
            if k is None:
                break
            col ^= cols[k]
        if col:
            low = max(col)
            low_owner[low] = j
            paired.add(low)
            paired.add(j)
            if times[low] < times[j]:
                pts.append(PersistencePoint(len(order[low]) - 1, times[low], times[j]))
    for j, s in enumerate(order):
        if j not in paired and not cols[j]:
            pts.append(PersistencePoint(len(s) - 1, times[j], float(n_snapshots)))
    if max_hom_dim is not None:
        pts = [q for q in pts if q.dim <= max_hom_dim]
    return ZigzagDiagram(tuple(pts), n_snapshots)


@dataclass
class BettiReport:
    mismatches: list = field(default_factory=list)  # (t, p, diagram count, betti)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches


def betti_consistency(schedule: ZigzagSchedule, diagram: ZigzagDiagram, max_hom_dim: int = 1) -> BettiReport:
    """Compare interval counts with Betti numbers of each reconstructed complex.

    H_0 is cross-checked a second time with union-find.
    """
    report = BettiReport()
    for t in schedule.positions():
        K = schedule.live_at(t)
        betti = betti_numbers(K, max_hom_dim)
        for p in range(max_hom_dim + 1):
            got = diagram.alive_at(t, p)
            report.checked += 1
            if got != betti[p]:
                report.mismatches.append((t, p, got, betti[p]))
        comps = connected_components(K)
        if comps != diagram.alive_at(t, 0):
            report.mismatches.append((t, "components", diagram.alive_at(t, 0), comps))
    return report
