"""Simplex/times schedules for the union zigzag of Rips complexes.

Grid positions are ``0, 0.5, 1, ..., n``: integer ``i`` is ``R(X_i, r_i)`` and
``i + 0.5`` is ``R(X_i u X_{i+1}, max(r_i, r_{i+1}))``. A times list alternates
appear/disappear; a simplex is live at ``t`` when ``appear <= t < disappear``
for one of its pairs. Anything live at the final position disappears at
``n + 1``.

Internally times are handled as half-steps ``h = 2 t`` so that all arithmetic
is on integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ._tables import InstanceTable, MalformedSchedule
from .complexes import SimplicialComplex, _rips_simplices, simplex_key
from .geometry import PointCloud, disjoint_union, pairwise_distances


class ScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class ZigzagSchedule:
    n_snapshots: int
    simplices: tuple
    times: tuple
    radii: tuple
    max_dim: int

    @property
    def n(self) -> int:
        """Index of the last snapshot."""
        return self.n_snapshots - 1

    def positions(self) -> list[float]:
        return [h / 2 for h in range(2 * self.n + 1)]

    def live_at(self, t: float) -> SimplicialComplex:
        h = round(2 * t)
        live = [s for s, ts in zip(self.simplices, self.times) if _live(_halves(ts), h)]
        return SimplicialComplex(frozenset(live))

    def canonical(self) -> "ZigzagSchedule":
        order = sorted(range(len(self.simplices)), key=lambda i: simplex_key(self.simplices[i]))
        return ZigzagSchedule(
            self.n_snapshots,
            tuple(self.simplices[i] for i in order),
            tuple(self.times[i] for i in order),
            self.radii,
            self.max_dim,
        )

    def to_json(self) -> dict:
        return {
            "n_snapshots": self.n_snapshots,
            "radii": [float(r) for r in self.radii],
            "max_dim": self.max_dim,
            "simplices": [list(s) for s in self.simplices],
            "times": [list(t) for t in self.times],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ZigzagSchedule":
        simplices = tuple(tuple(int(v) for v in s) for s in obj["simplices"])
        max_dim = obj.get("max_dim", max((len(s) - 1 for s in simplices), default=0))
        return cls(
            int(obj["n_snapshots"]),
            simplices,
            tuple(tuple(float(t) for t in ts) for ts in obj["times"]),
            tuple(float(r) for r in obj.get("radii", [])),
            int(max_dim),
        )

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json()))

    @classmethod
    def load(cls, path) -> "ZigzagSchedule":
        return cls.from_json(json.loads(Path(path).read_text()))


def _halves(ts) -> list[int]:
    return [round(2 * t) for t in ts]


def _live(hs: list[int], h: int) -> bool:
    return any(hs[k] <= h < hs[k + 1] for k in range(0, len(hs) - 1, 2))


def _check_clouds(clouds: Sequence[PointCloud]) -> None:
    if not clouds:
        raise ScheduleError("need at least one point cloud")
    seen = set()
    for i, c in enumerate(clouds):
        ids = set(c.ids.tolist())
        if seen & ids:
            raise ScheduleError(f"cloud {i} shares vertex ids with an earlier cloud")
        seen |= ids
        if c.ambient_dim != clouds[0].ambient_dim:
            raise ScheduleError(f"cloud {i} has ambient dimension {c.ambient_dim}, expected {clouds[0].ambient_dim}")


def _rips(cloud: PointCloud, r: float, max_dim: int) -> list:
    if len(cloud) == 0:
        return []
    return _rips_simplices(pairwise_distances(cloud), r, max_dim, cloud.ids)


def _finish(n_snapshots, table: dict, radii, max_dim) -> ZigzagSchedule:
    simplices = sorted(table, key=simplex_key)
    times = tuple(tuple(h / 2 for h in table[s]) for s in simplices)
    return ZigzagSchedule(n_snapshots, tuple(simplices), times, tuple(float(r) for r in radii), max_dim)


def build_schedule_fixed(clouds: Sequence[PointCloud], r: float, max_dim: int = 2) -> ZigzagSchedule:
    """Fixed-radius schedule computed from the union complexes alone.

    Each simplex of ``R(X_i u X_{i+1}, r)`` falls in one of three groups:
    inside ``X_i`` (live ``i-0.5 .. i+0.5``, from 0 when ``i = 0``), inside
    ``X_{i+1}`` (live ``i+0.5 .. i+1.5``) or straddling (live at ``i+0.5``
    only). Repeats from neighbouring unions carry the same interval.
    """
    _check_clouds(clouds)
    n = len(clouds) - 1
    end = 2 * n + 2
    table: dict = {}
    if n == 0:
        for s in _rips(clouds[0], r, max_dim):
            table[s] = [0, end]
        return _finish(1, table, [r], max_dim)

    def put(s, a, b):
        old = table.get(s)
        if old is None:
            table[s] = [a, b]
        elif old != [a, b]:
            # fixed radius + disjoint snapshots => a single contiguous run
            raise AssertionError(f"non-contiguous presence for {s}: {old} vs {[a, b]}")

    for i in range(n):
        left = set(clouds[i].ids.tolist())
        union = disjoint_union(clouds[i], clouds[i + 1])
        for s in _rips(union, r, max_dim):
            inside = [v in left for v in s]
            if all(inside):
                put(s, max(2 * i - 1, 0), 2 * i + 2)
            elif not any(inside):
                put(s, 2 * i + 1, 2 * i + 4)
            else:
                put(s, 2 * i + 1, 2 * i + 2)
    return _finish(n + 1, table, [r] * (n + 1), max_dim)


def position_complexes(clouds: Sequence[PointCloud], radii: Sequence[float], max_dim: int) -> list[list]:
    """Rips simplices at every grid position ``0, 0.5, ..., n`` in order."""
    n = len(clouds) - 1
    out = []
    for i in range(n + 1):
        out.append(_rips(clouds[i], radii[i], max_dim))
        if i < n:
            union = disjoint_union(clouds[i], clouds[i + 1])
            out.append(_rips(union, max(radii[i], radii[i + 1]), max_dim))
    return out


def presence_runs(positions: Sequence[int], last: int) -> list[int]:
    """Convert sorted half-step positions into appear/disappear half-steps.

    A maximal run ``a..b`` becomes ``(a, b+1)``; a run reaching ``last``
    closes at ``last + 2`` (i.e. ``n + 1``).
    """
    out: list[int] = []
    start = prev = None
    for h in positions:
        if start is None:
            start = prev = h
        elif h == prev + 1:
            prev = h
        else:
            out += [start, prev + 1]
            start = prev = h
    if start is not None:
        out += [start, prev + 1 if prev < last else last + 2]
    return out


def build_schedule_variable(clouds: Sequence[PointCloud], radii: Sequence[float], max_dim: int = 2) -> ZigzagSchedule:
    """Per-snapshot radii; unions use the larger of the two neighbours.

    Every grid position is computed explicitly and each simplex's maximal
    runs of presence become its times list, so a simplex that leaves and
    comes back gets more than one appear/disappear pair.
    """
    _check_clouds(clouds)
    if len(radii) != len(clouds):
        raise ScheduleError(f"{len(radii)} radii for {len(clouds)} clouds")
    if any(r < 0 for r in radii):
        raise ScheduleError("radii must be non-negative")
    n = len(clouds) - 1
    seen: dict = {}
    for h, simplices in enumerate(position_complexes(clouds, radii, max_dim)):
        for s in simplices:
            seen.setdefault(s, []).append(h)
    table = {s: presence_runs(hs, 2 * n) for s, hs in seen.items()}
    return _finish(n + 1, table, radii, max_dim)


@dataclass
class ScheduleDiagnostics:
    ok: bool
    violation: str | None
    counts: list[int] = field(default_factory=list)  # live simplices per grid position
    n_simplices: int = 0

    @property
    def largest_complex(self) -> int:
        return max(self.counts, default=0)


def validate_schedule(schedule: ZigzagSchedule) -> ScheduleDiagnostics:
    """Check every schedule invariant; never raises."""
    try:
        return _validate(schedule)
    except Exception as exc:  # malformed input of any kind
        return ScheduleDiagnostics(False, f"malformed schedule: {exc!r}")


def _validate(sc: ZigzagSchedule) -> ScheduleDiagnostics:
    try:
        table = InstanceTable(sc.simplices, sc.times, sc.n_snapshots)
    except MalformedSchedule as exc:
        return ScheduleDiagnostics(False, str(exc), n_simplices=len(sc.simplices))
    _, problems = table.facet_instances()
    if problems:
        return ScheduleDiagnostics(False, problems[0], n_simplices=len(sc.simplices))
    return ScheduleDiagnostics(True, None, table.counts(), len(sc.simplices))
