"""Point clouds, delay embeddings, distances and greedy subsampling."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform


class GeometryError(ValueError):
    """Raised for invalid geometric parameters or inputs."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Finite point set in R^d.

    Every point carries a global vertex id (unique within the cloud) and the
    index of the snapshot it was sampled for. Arrays are read-only.
    """

    coords: np.ndarray
    ids: np.ndarray
    snapshots: np.ndarray
    ambient_dim: int = field(default=-1)

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        dim = self.ambient_dim
        if coords.ndim == 1:
            # 1-D input is a list of scalars unless it is empty
            coords = coords.reshape(-1, 1) if coords.size else coords.reshape(0, max(dim, 1))
        if coords.ndim != 2:
            raise GeometryError(f"coords must be 2-D, got shape {coords.shape}")
        if dim < 0:
            dim = coords.shape[1]
        if coords.shape[1] != dim or dim < 1:
            raise GeometryError(f"points have {coords.shape[1]} coordinates, expected ambient_dim={dim}")
        ids = np.asarray(self.ids, dtype=np.int64).reshape(-1)
        snaps = np.asarray(self.snapshots, dtype=np.int64).reshape(-1)
        n = coords.shape[0]
        if ids.shape[0] != n or snaps.shape[0] != n:
            raise GeometryError("ids and snapshots must have one entry per point")
        if n and ids.min() < 0:
            raise GeometryError("vertex ids must be non-negative")
        if len(np.unique(ids)) != n:
            raise GeometryError("vertex ids must be unique within a cloud")
        object.__setattr__(self, "coords", _frozen(coords))
        object.__setattr__(self, "ids", _frozen(ids))
        object.__setattr__(self, "snapshots", _frozen(snaps))
        object.__setattr__(self, "ambient_dim", int(dim))

    @classmethod
    def from_points(cls, points, snapshot: int = 0, start_id: int = 0) -> "PointCloud":
        coords = np.asarray(points, dtype=float)
        if coords.ndim == 1:
            coords = coords.reshape(-1, 1)
        n = coords.shape[0]
        return cls(coords, np.arange(start_id, start_id + n), np.full(n, snapshot))

    @classmethod
    def empty(cls, ambient_dim: int) -> "PointCloud":
        return cls(np.zeros((0, ambient_dim)), np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))

    def __len__(self) -> int:
        return self.coords.shape[0]

    def relabel(self, start_id: int, snapshot: int | None = None) -> "PointCloud":
        """Copy with ids ``start_id, start_id+1, ...`` in point order."""
        snaps = self.snapshots if snapshot is None else np.full(len(self), snapshot)
        return PointCloud(self.coords, np.arange(start_id, start_id + len(self)), snaps, self.ambient_dim)

    def take(self, indices: Sequence[int]) -> "PointCloud":
        idx = np.asarray(indices, dtype=np.int64)
        return PointCloud(self.coords[idx], self.ids[idx], self.snapshots[idx], self.ambient_dim)

    def __eq__(self, other):
        if not isinstance(other, PointCloud):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and np.array_equal(self.coords, other.coords)
            and np.array_equal(self.ids, other.ids)
            and np.array_equal(self.snapshots, other.snapshots)
        )

    __hash__ = None


def delay_embed(series, d: int, tau: int, snapshot: int = 0) -> PointCloud:
    """Time-delay embedding of a scalar series.

    Point ``i`` is ``(x[i], x[i+tau], ..., x[i+(d-1)tau])``. Ids are local,
    ``0..count-1``.
    """
    x = np.asarray(series, dtype=float).reshape(-1)
    if d < 1 or tau < 1:
        raise GeometryError(f"need d >= 1 and tau >= 1, got d={d}, tau={tau}")
    span = (d - 1) * tau
    if x.shape[0] <= span:
        raise GeometryError(
            f"series of length {x.shape[0]} too short for d={d}, tau={tau}: "
            f"need at least {span + 1} samples"
        )
    count = x.shape[0] - span
    idx = np.arange(count)[:, None] + tau * np.arange(d)[None, :]
    return PointCloud(x[idx], np.arange(count), np.full(count, snapshot), d)


def pairwise_distances(cloud: PointCloud) -> np.ndarray:
    """Euclidean distance matrix; each unordered pair is computed once."""
    n = len(cloud)
    if n == 0:
        raise GeometryError("distance matrix of an empty cloud")
    if n == 1:
        return np.zeros((1, 1))
    return squareform(pdist(cloud.coords))


def greedy_permutation(cloud: PointCloud, k: int, seed_index: int = 0) -> PointCloud:
    """Furthest point sampling.

    Starts at ``cloud[seed_index]`` and repeatedly takes the point with the
    largest distance to the points already chosen. Ties go to the lowest
    original index. Output is in selection order and keeps ids.
    """
    n = len(cloud)
    if not 1 <= k <= n:
        raise GeometryError(f"k must lie in [1, {n}], got {k}")
    if not 0 <= seed_index < n:
        raise GeometryError(f"seed_index must lie in [0, {n - 1}], got {seed_index}")
    pts = cloud.coords
    chosen = [seed_index]
    mind = np.linalg.norm(pts - pts[seed_index], axis=1)
    mind[seed_index] = -np.inf
    for _ in range(k - 1):
        nxt = int(np.argmax(mind))
        chosen.append(nxt)
        mind = np.minimum(mind, np.linalg.norm(pts - pts[nxt], axis=1))
        mind[chosen] = -np.inf
    return cloud.take(chosen)


def disjoint_union(a: PointCloud, b: PointCloud) -> PointCloud:
    if a.ambient_dim != b.ambient_dim:
        raise GeometryError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    clash = np.intersect1d(a.ids, b.ids)
    if clash.size:
        raise GeometryError(f"vertex id collision: {clash[:5].tolist()}")
    return PointCloud(
        np.vstack([a.coords, b.coords]),
        np.concatenate([a.ids, b.ids]),
        np.concatenate([a.snapshots, b.snapshots]),
        a.ambient_dim,
    )


def globalize(clouds: Iterable[PointCloud]) -> list[PointCloud]:
    """Give each cloud fresh consecutive ids and its position as snapshot label."""
    out, offset = [], 0
    for i, c in enumerate(clouds):
        out.append(c.relabel(offset, snapshot=i))
        offset += len(c)
    return out


def circle_cloud(radius: float, n_points: int, center=(0.0, 0.0), phase: float = 0.0) -> PointCloud:
    theta = phase + 2 * np.pi * np.arange(n_points) / n_points
    pts = np.column_stack([center[0] + radius * np.cos(theta), center[1] + radius * np.sin(theta)])
    return PointCloud.from_points(pts)


# -- file formats -----------------------------------------------------------

def _numeric_rows(path: Path) -> list[list[float]]:
    rows = []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            cells = [c.strip() for c in row if c.strip()]
            if not cells:
                continue
            try:
                rows.append([float(c) for c in cells])
            except ValueError:
                if i == 0 and not rows:
                    continue  # header
                raise GeometryError(f"{path}: non-numeric row {i + 1}: {row}")
    return rows


def read_point_cloud_csv(path, snapshot: int = 0) -> PointCloud:
    rows = _numeric_rows(Path(path))
    if not rows:
        raise GeometryError(f"{path}: no points")
    if len({len(r) for r in rows}) != 1:
        raise GeometryError(f"{path}: rows have differing column counts")
    return PointCloud.from_points(np.array(rows), snapshot=snapshot)


def write_point_cloud_csv(cloud: PointCloud, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{j}" for j in range(cloud.ambient_dim)])
        for p in cloud.coords:
            w.writerow([repr(float(v)) for v in p])


def read_time_series_csv(path) -> np.ndarray:
    """Single column CSV (optional header) or one whitespace-delimited line."""
    text = Path(path).read_text().strip()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) == 1 and "," not in lines[0]:
        return np.array([float(v) for v in lines[0].split()])
    rows = _numeric_rows(Path(path))
    if any(len(r) != 1 for r in rows):
        raise GeometryError(f"{path}: expected a single column")
    return np.array([r[0] for r in rows])


def write_time_series_csv(values, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("value\n")
        for v in np.asarray(values, dtype=float):
            fh.write(f"{float(v)!r}\n")
