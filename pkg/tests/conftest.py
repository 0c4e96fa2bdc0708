import numpy as np
import pytest
from hypothesis import strategies as st

from cpih.geometry import ConvexPolygon, ConvexRegion, convex_hull
from cpih.invariant_hull import RegionFamily

coord = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False)
points = st.tuples(coord, coord)


@st.composite
def regions(draw, max_size=2.0):
    kind = draw(st.sampled_from(["point", "square", "disk", "polygon"]))
    c = draw(points)
    if kind == "point":
        return ConvexRegion.point(c)
    if kind == "square":
        return ConvexRegion.square(c, draw(st.floats(0.05, max_size)))
    if kind == "disk":
        return ConvexRegion.disk(c, draw(st.floats(0.05, max_size)))
    offs = draw(st.lists(st.tuples(st.floats(-max_size, max_size), st.floats(-max_size, max_size)),
                         min_size=3, max_size=6))
    return ConvexRegion.from_polygon(convex_hull([(c[0] + a, c[1] + b) for a, b in offs]))


@st.composite
def polygons(draw, min_points=1, max_points=8):
    pts = draw(st.lists(points, min_size=min_points, max_size=max_points))
    return convex_hull(pts)


def random_family(rng, n, spread=10.0, sizes=(0.2, 1.0), kinds=("square", "disk")):
    """n squares/disks with centres uniform in [0, spread]^2."""
    regs = []
    for _ in range(n):
        c = (float(rng.uniform(0, spread)), float(rng.uniform(0, spread)))
        s = float(rng.uniform(*sizes))
        kind = kinds[int(rng.integers(len(kinds)))]
        regs.append(ConvexRegion.square(c, s) if kind == "square" else ConvexRegion.disk(c, s))
    return RegionFamily.of(regs)


def unit_square() -> ConvexPolygon:
    return convex_hull([(0, 0), (1, 0), (1, 1), (0, 1)])


def same_vertices(a: ConvexPolygon, b: ConvexPolygon, tol=1e-9) -> bool:
    if len(a) != len(b):
        return False
    return all(min(abs(p[0] - q[0]) + abs(p[1] - q[1]) for q in b.vertices) <= tol for p in a.vertices)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
