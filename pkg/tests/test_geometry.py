import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from buzz.geometry import (
    GeometryError,
    PointCloud,
    circle_cloud,
    delay_embed,
    disjoint_union,
    globalize,
    greedy_permutation,
    pairwise_distances,
    read_point_cloud_csv,
    read_time_series_csv,
    write_point_cloud_csv,
    write_time_series_csv,
)
from oracles import brute_distances, brute_greedy


def test_delay_embed_small():
    pc = delay_embed([0, 1, 2, 3, 4, 5], 2, 3)
    assert pc.coords.tolist() == [[0, 3], [1, 4], [2, 5]]
    assert pc.ids.tolist() == [0, 1, 2]
    assert pc.ambient_dim == 2


def test_delay_embed_dim_one_is_the_series():
    x = [3.0, -1.0, 2.5]
    assert delay_embed(x, 1, 7).coords[:, 0].tolist() == x


def test_delay_embed_quarter_period_circle():
    x = np.sin(2 * np.pi * np.arange(100) / 16)
    pc = delay_embed(x, 2, 4)
    assert len(pc) == 96
    assert np.max(np.abs(np.linalg.norm(pc.coords, axis=1) - 1)) < 1e-9


def test_delay_embed_too_short_names_minimum():
    with pytest.raises(GeometryError, match="at least 7"):
        delay_embed(range(6), 3, 3)


@given(st.integers(1, 60), st.integers(1, 5), st.integers(1, 6))
def test_delay_embed_size(n, d, tau):
    if n <= (d - 1) * tau:
        with pytest.raises(GeometryError):
            delay_embed(np.zeros(n), d, tau)
    else:
        assert len(delay_embed(np.zeros(n), d, tau)) == n - (d - 1) * tau


def test_distances_small_cases():
    assert pairwise_distances(PointCloud.from_points([[1.0, 2.0]])).tolist() == [[0.0]]
    D = pairwise_distances(PointCloud.from_points([[0, 0], [3, 4]]))
    assert D[0, 1] == D[1, 0] == 5.0
    with pytest.raises(GeometryError):
        pairwise_distances(PointCloud.empty(2))


def test_distances_match_double_loop(rng):
    for _ in range(5):
        pts = rng.normal(size=(20, 3))
        D = pairwise_distances(PointCloud.from_points(pts))
        assert np.max(np.abs(D - brute_distances(pts))) < 1e-12
        assert (D == D.T).all()
        assert (np.diag(D) == 0).all()


def test_greedy_line():
    pc = PointCloud.from_points(np.arange(11.0)[:, None])
    assert greedy_permutation(pc, 3, 0).coords[:, 0].tolist() == [0, 10, 5]


def test_greedy_full_is_permutation():
    pc = PointCloud.from_points(np.random.default_rng(1).normal(size=(15, 2)))
    sub = greedy_permutation(pc, 15, 4)
    assert sub.ids[0] == 4
    assert sorted(sub.ids.tolist()) == list(range(15))


def test_greedy_matches_brute_force():
    rng = np.random.default_rng(7)
    for trial in range(100):
        n = int(rng.integers(5, 40)) if trial else 200
        k = int(rng.integers(1, n + 1)) if trial else 20
        # coarse grid coordinates create ties on purpose
        pts = rng.integers(0, 6, size=(n, 2)).astype(float) if trial % 3 == 0 else rng.normal(size=(n, 2))
        seed = int(rng.integers(0, n))
        got = greedy_permutation(PointCloud.from_points(pts), k, seed).ids.tolist()
        assert got == brute_greedy(pts, k, seed)


def test_greedy_prefix_and_determinism():
    pc = PointCloud.from_points(np.random.default_rng(3).normal(size=(50, 2)))
    a = greedy_permutation(pc, 30, 2).ids.tolist()
    b = greedy_permutation(pc, 12, 2).ids.tolist()
    assert a[:12] == b
    assert greedy_permutation(pc, 30, 2) == greedy_permutation(pc, 30, 2)


def test_greedy_range_errors():
    pc = PointCloud.from_points([[0.0], [1.0]])
    for k, s in [(0, 0), (3, 0), (1, 2), (1, -1)]:
        with pytest.raises(GeometryError):
            greedy_permutation(pc, k, s)


def test_disjoint_union():
    a = PointCloud.from_points([[0, 0], [1, 0]])
    b = PointCloud.from_points([[0, 0]], snapshot=1, start_id=2)
    u = disjoint_union(a, b)
    assert len(u) == 3 and u.ids.tolist() == [0, 1, 2]
    assert u.snapshots.tolist() == [0, 0, 1]
    assert pairwise_distances(u)[0, 2] == 0.0
    assert disjoint_union(a, PointCloud.empty(2)) == a
    with pytest.raises(GeometryError):
        disjoint_union(a, a)
    with pytest.raises(GeometryError):
        disjoint_union(a, PointCloud.from_points([[0, 0, 0]], start_id=9))


def test_union_associative_and_globalize():
    a, b, c = globalize([PointCloud.from_points(np.full((k, 2), k)) for k in (1, 2, 3)])
    left = disjoint_union(disjoint_union(a, b), c)
    right = disjoint_union(a, disjoint_union(b, c))
    assert left == right
    assert left.ids.tolist() == list(range(6))
    assert c.snapshots.tolist() == [2, 2, 2]


def test_cloud_is_immutable():
    pc = circle_cloud(1.0, 8)
    with pytest.raises(ValueError):
        pc.coords[0, 0] = 5.0


def test_csv_round_trip(tmp_path):
    pc = circle_cloud(2.0, 7)
    write_point_cloud_csv(pc, tmp_path / "c.csv")
    back = read_point_cloud_csv(tmp_path / "c.csv")
    assert np.allclose(back.coords, pc.coords, atol=0, rtol=0)
    write_time_series_csv([1.5, -2.0, 3.25], tmp_path / "t.csv")
    assert read_time_series_csv(tmp_path / "t.csv").tolist() == [1.5, -2.0, 3.25]
    (tmp_path / "h.csv").write_text("x,y\n1,2\n3,4\n")
    assert read_point_cloud_csv(tmp_path / "h.csv").coords.tolist() == [[1, 2], [3, 4]]
    (tmp_path / "w.csv").write_text("1 2 3.5\n")
    assert read_time_series_csv(tmp_path / "w.csv").tolist() == [1, 2, 3.5]


@settings(max_examples=30)
@given(st.lists(st.floats(-5, 5), min_size=2, max_size=12))
def test_distance_symmetry_property(xs):
    pc = PointCloud.from_points(np.array(xs)[:, None])
    D = pairwise_distances(pc)
    assert (D == D.T).all() and (D >= 0).all()
