import numpy as np
import pytest

from conftest import random_family, same_vertices
from cpih.geometry import ConvexRegion, GeometryError, convex_hull, hausdorff, symmetric_difference_area
from cpih.invariant_hull import RegionFamily, ihull
from cpih.oracle import (
    CONTAINMENT_TOL,
    OracleReport,
    audit_ihull,
    brute_centerpoint_region,
    extreme_configurations,
    mc_ihull,
    sample_extreme_points,
)
from cpih.safe_region import cpih_region

TRIANGLE_SQUARES = RegionFamily.of(ConvexRegion.square(c, 0.5) for c in [(0, 0), (10, 0), (5, 10)])


def test_point_regions_give_their_hull_at_any_count():
    pts = [(0.0, 0.0), (4.0, 1.0), (1.0, 5.0), (2.0, 2.0)]
    B = RegionFamily.points(pts)
    for n in (1, 7, 100):
        assert same_vertices(mc_ihull(B, n, 3), convex_hull(pts))


def test_square_triple_converges_at_ten_thousand_samples():
    approx = mc_ihull(TRIANGLE_SQUARES, 10_000, 0)
    assert hausdorff(approx, ihull(TRIANGLE_SQUARES)) <= 1e-2


def test_area_sampling_is_a_valid_but_slower_superset():
    exact = ihull(TRIANGLE_SQUARES)
    coarse = mc_ihull(TRIANGLE_SQUARES, 2_000, 0, sampling="area")
    assert all(coarse.distance_to(v) <= CONTAINMENT_TOL for v in exact.vertices)
    assert hausdorff(coarse, exact) > hausdorff(mc_ihull(TRIANGLE_SQUARES, 2_000, 0), exact)


def test_unknown_sampling_and_bad_counts():
    with pytest.raises(ValueError, match="sampling"):
        mc_ihull(TRIANGLE_SQUARES, 10, 0, sampling="grid")
    with pytest.raises(ValueError, match="positive"):
        mc_ihull(TRIANGLE_SQUARES, 0, 0)


def test_ihull_is_inside_the_oracle(rng):
    for k in range(10):
        B = random_family(rng, int(rng.integers(3, 7)))
        report = audit_ihull(B, 500, k)
        assert report.violations == 0


def test_oracle_shrinks_with_nested_samples(rng):
    B = random_family(rng, 4)
    prev = None
    for n in (10, 100, 1000):
        cur = mc_ihull(B, n, 11)
        if prev is not None and not cur.is_empty:
            assert all(prev.distance_to(v) <= 1e-9 for v in cur.vertices)
        prev = cur


def test_configurations_are_prefix_stable():
    a = extreme_configurations(TRIANGLE_SQUARES, 50, 4)
    b = extreme_configurations(TRIANGLE_SQUARES, 80, 4)
    assert np.array_equal(a, b[:50])


def test_extreme_points_lie_on_the_region_boundary():
    rng = np.random.default_rng(0)
    sq = ConvexRegion.square((1.0, 2.0), 0.5)
    pts = sample_extreme_points(sq, rng, 200)
    assert {tuple(p) for p in pts.tolist()} <= {(0.5, 1.5), (1.5, 1.5), (1.5, 2.5), (0.5, 2.5)}
    disk = ConvexRegion.disk((0.0, 0.0), 2.0)
    r = np.hypot(*sample_extreme_points(disk, rng, 200).T)
    assert np.allclose(r, 2.0)


def test_report_rejects_negative_values():
    with pytest.raises(ValueError):
        OracleReport("x", 10, -1.0, 0)
    with pytest.raises(ValueError):
        OracleReport("x", 10, 0.0, -1)


# --------------------------------------------------------- centerpoints

def test_brute_centerpoint_examples():
    tri = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0)]
    assert same_vertices(brute_centerpoint_region(tri), convex_hull(tri))
    corners = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    assert same_vertices(brute_centerpoint_region(corners), convex_hull([(0.5, 0.5)]))


@pytest.mark.parametrize("n", [2, 10])
def test_brute_centerpoint_size_limits(n):
    with pytest.raises(GeometryError):
        brute_centerpoint_region([(float(i), float(i * i)) for i in range(n)])


@pytest.mark.parametrize("n", [6, 7])
def test_brute_matches_cpih_on_points(n):
    rng = np.random.default_rng(n)
    for _ in range(100):
        pts = [tuple(p) for p in rng.uniform(0, 10, size=(n, 2)).tolist()]
        got = cpih_region(RegionFamily.points(pts)).region
        want = brute_centerpoint_region(pts)
        assert symmetric_difference_area(got, want) <= 1e-6 * convex_hull(pts).area()
