import numpy as np
import pytest

from buzz.complexes import rips_complex, simplex_key
from buzz.geometry import PointCloud, globalize, pairwise_distances
from buzz.zigzag_builder import ZigzagSchedule, build_schedule_fixed, build_schedule_variable


def clouds_of(*point_lists):
    return globalize([PointCloud.from_points(p) for p in point_lists])


def pair_and_apex():
    """X_0: two points within r; X_1: one point near both."""
    cl = clouds_of([[0.0, 0.0], [1.0, 0.0]], [[0.5, 0.5]])
    return build_schedule_fixed(cl, 1.0, 2)


def square_then_cone():
    """X_0: a unit square (hollow at r = 1.1); X_1: its centre plus a far point.

    The union fills the square from the centre, so the loop lives only at 0
    and the two X_1 points give one H0 class born at the union.
    """
    cl = clouds_of([[0, 0], [1, 0], [1, 1], [0, 1]], [[0.5, 0.5], [5.0, 5.0]])
    return build_schedule_fixed(cl, 1.1, 2)


def union_only_edge():
    """Edge between the two X_1 points exists in both unions but not in X_1."""
    cl = clouds_of([[0.0, -1.0]], [[0.0, 0.0], [1.0, 0.0]], [[1.0, -1.0]])
    return build_schedule_variable(cl, [1.5, 0.5, 1.5], 2)


def random_clouds(rng, n_clouds, max_points, dim=2, scale=2.0):
    pts = [rng.uniform(0, scale, size=(int(rng.integers(1, max_points + 1)), dim)) for _ in range(n_clouds)]
    return clouds_of(*pts)


def random_schedule(rng, max_snapshots=4, max_points=8, max_dim=2):
    k = int(rng.integers(1, max_snapshots + 1))
    cl = random_clouds(rng, k, max_points)
    if rng.random() < 0.5:
        return build_schedule_fixed(cl, float(rng.uniform(0.2, 1.6)), max_dim)
    return build_schedule_variable(cl, [float(r) for r in rng.uniform(0.1, 1.6, size=k)], max_dim)


def monotone_case(rng):
    """Random Rips filtration laid out on the grid, never deleting anything."""
    n_pts = int(rng.integers(2, 13))
    D = pairwise_distances(PointCloud.from_points(rng.uniform(size=(n_pts, 2))))
    n = int(rng.integers(1, 4))
    radii = np.sort(rng.uniform(0, 0.8, size=2 * n + 1))
    first = {}
    for h, r in enumerate(radii):
        for s in rips_complex(D, float(r), 2):
            first.setdefault(s, h)
    simplices = sorted(first, key=simplex_key)
    times = tuple((first[s] / 2, float(n + 1)) for s in simplices)
    sched = ZigzagSchedule(n + 1, tuple(simplices), times, (), 2)
    additions = sorted(((s, first[s] / 2) for s in simplices), key=lambda a: (a[1], simplex_key(a[0])))
    return sched, additions


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
