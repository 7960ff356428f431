"""Radius search: the kd-tree route must match the naive scan exactly,
boundary points included."""
import math

import numpy as np
import pytest

from varden.model import DataError, Dataset, ParamError
from varden.neighborhood import (
    build_index,
    dataset_diameter,
    region_query,
    region_query_naive,
)


@pytest.fixture
def grid_ds():
    # 5x5 integer grid, spacing 1
    pts = [(float(x), float(y)) for x in range(5) for y in range(5)]
    return Dataset(np.array(pts))


def test_self_inclusive(grid_ds):
    idx = build_index(grid_ds)
    for i in (0, 7, 24):
        assert i in region_query(idx, i, 0.5)


def test_known_counts_on_grid(grid_ds):
    idx = build_index(grid_ds)
    # center point (2,2): closed ball r=1 holds self + 4 axis neighbors
    center = 2 * 5 + 2
    assert region_query(idx, center, 1.0).size == 5
    # r=1.5 adds the 4 diagonals (sqrt(2) <= 1.5)
    assert region_query(idx, center, 1.5).size == 9


def test_boundary_is_closed(grid_ds):
    idx = build_index(grid_ds)
    # distance from (0,0) to (1,0) is exactly 1.0 and must be included
    hits = region_query(idx, 0, 1.0)
    assert 5 in hits  # point (1,0) has index 1*5+0
    naive = region_query_naive(grid_ds, 0, 1.0)
    assert np.array_equal(hits, naive)


def test_query_by_coordinates(grid_ds):
    idx = build_index(grid_ds)
    got = region_query(idx, (2.0, 2.0), 1.0)
    assert np.array_equal(got, region_query(idx, 12, 1.0))


def test_results_sorted_ascending():
    rng = np.random.default_rng(42)
    ds = Dataset(rng.normal(size=(200, 2)))
    idx = build_index(ds, leaf_size=8)
    for i in range(0, 200, 17):
        hits = region_query(idx, i, 0.7)
        assert np.all(np.diff(hits) > 0)


@pytest.mark.parametrize("dim", [1, 2, 3])
@pytest.mark.parametrize("leaf", [1, 4, 32])
def test_matches_naive_random(dim, leaf):
    rng = np.random.default_rng(100 * dim + leaf)
    ds = Dataset(rng.uniform(-5, 5, size=(120, dim)))
    idx = build_index(ds, leaf_size=leaf)
    for _ in range(25):
        q = int(rng.integers(0, len(ds)))
        eps = float(rng.uniform(0.05, 6.0))
        assert np.array_equal(region_query(idx, q, eps), region_query_naive(ds, q, eps))


def test_matches_naive_at_exact_boundary_radii():
    # radii chosen to land exactly on pairwise distances
    rng = np.random.default_rng(7)
    ds = Dataset(rng.integers(0, 8, size=(60, 2)).astype(float))
    idx = build_index(ds, leaf_size=4)
    coords = ds.coords
    for q in range(0, 60, 7):
        diffs = coords - coords[q]
        dists = np.sqrt((diffs**2).sum(axis=1))
        for eps in np.unique(dists)[1:6]:
            got = region_query(idx, q, float(eps))
            want = region_query_naive(ds, q, float(eps))
            assert np.array_equal(got, want)


def test_duplicate_points():
    ds = Dataset(np.array([[1.0, 1.0]] * 10 + [[5.0, 5.0]]))
    idx = build_index(ds, leaf_size=2)
    assert region_query(idx, 0, 0.1).size == 10
    assert np.array_equal(region_query(idx, 0, 0.1), np.arange(10))


def test_eps_validation(grid_ds):
    idx = build_index(grid_ds)
    for bad in (0.0, -1.0, math.nan, math.inf):
        with pytest.raises(ParamError):
            region_query(idx, 0, bad)
        with pytest.raises(ParamError):
            region_query_naive(grid_ds, 0, bad)


def test_query_validation(grid_ds):
    idx = build_index(grid_ds)
    with pytest.raises(DataError):
        region_query(idx, 999, 1.0)
    with pytest.raises(DataError):
        region_query(idx, (1.0, 2.0, 3.0), 1.0)
    with pytest.raises(DataError):
        region_query(idx, (math.nan, 0.0), 1.0)


def test_empty_dataset_queries_by_coords():
    ds = Dataset(np.empty((0, 2)))
    idx = build_index(ds)
    assert region_query(idx, (0.0, 0.0), 1.0).size == 0


class TestDiameter:
    def test_known_value(self):
        ds = Dataset(np.array([[0.0, 0.0], [3.0, 4.0], [1.0, 1.0]]))
        assert dataset_diameter(ds) == 5.0

    def test_degenerate(self):
        assert dataset_diameter(Dataset(np.array([[2.0, 2.0]]))) == 0.0
        assert dataset_diameter(Dataset(np.empty((0, 2)))) == 0.0

    def test_matches_bruteforce_random(self):
        rng = np.random.default_rng(3)
        ds = Dataset(rng.normal(size=(300, 2)))
        coords = ds.coords
        best = 0.0
        for i in range(len(ds)):
            d2 = ((coords - coords[i]) ** 2).sum(axis=1)
            best = max(best, float(d2.max()))
        assert dataset_diameter(ds) == pytest.approx(math.sqrt(best), rel=0, abs=0)
