import numpy as np
import pytest

from conftest import random_family, same_vertices
from cpih import kernels
from cpih.geometry import ConvexPolygon, ConvexRegion, convex_hull
from cpih.invariant_hull import RegionFamily, ihull
from cpih.safe_region import cpih_region, subset_size


def compiled_ihull(B):
    verts = kernels.ihull_arrays(*kernels.encode(B.regions))
    return ConvexPolygon(tuple((float(x), float(y)) for x, y in verts))


def test_encode_refuses_polygon_regions():
    tri = ConvexRegion.from_polygon(convex_hull([(0, 0), (1, 0), (0, 1)]))
    assert kernels.encode([ConvexRegion.point((0, 0)), tri]) is None
    kind, cx, cy, sz = kernels.encode([ConvexRegion.square((1, 2), 0.5), ConvexRegion.disk((3, 4), 1.0)])
    assert kind.tolist() == [kernels.SQUARE, kernels.DISK]
    assert cx.tolist() == [1.0, 3.0] and cy.tolist() == [2.0, 4.0] and sz.tolist() == [0.5, 1.0]


@pytest.mark.parametrize("kinds", [("square",), ("disk",), ("square", "disk")])
def test_ihull_matches_the_reference(kinds):
    rng = np.random.default_rng(len(kinds))
    for _ in range(40):
        B = random_family(rng, int(rng.integers(3, 7)), kinds=kinds)
        assert same_vertices(compiled_ihull(B), ihull(B), tol=1e-9)


def test_cpih_region_matches_the_reference(rng):
    for _ in range(40):
        n = int(rng.integers(4, 8))
        B = random_family(rng, n, sizes=(0.1, 0.6))
        verts, evaluated = kernels.cpih_region_arrays(*kernels.encode(B.regions), subset_size(n))
        ref = cpih_region(B, method="reference")
        got = ConvexPolygon(tuple(map(tuple, verts.tolist())))
        assert evaluated == ref.subsets_evaluated
        assert same_vertices(got, ref.region, tol=1e-9)


@pytest.mark.parametrize("family", [
    # repeated regions
    [ConvexRegion.square((2, 2), 0.5)] * 2 + [ConvexRegion.square((6, 1), 0.5)],
    [ConvexRegion.point((1, 0))] * 2 + [ConvexRegion.square((0, 0), 0.5)],
    # collinear members, so tangents are parallel
    [ConvexRegion.square((5 * i, 0), 1.0) for i in range(3)],
    [ConvexRegion.point((i, 2 * i)) for i in range(4)],
    [ConvexRegion.square((5 * i, 0), 1.0) for i in range(3)] + [ConvexRegion.square((5, 10), 1.0)],
    # point sitting inside a square
    [ConvexRegion.point((0.2, 0.1)), ConvexRegion.square((0, 0), 1.0), ConvexRegion.point((5, 5))],
])
def test_degenerate_families_match_the_reference(family):
    B = RegionFamily.of(family)
    assert same_vertices(compiled_ihull(B), ihull(B), tol=1e-9)
