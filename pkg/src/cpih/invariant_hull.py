"""Invariant hulls of imprecision regions in the plane.

The invariant hull of a family of regions is the set of points lying in
the convex hull of *every* choice of one point per region.  For three
regions it is bounded by the separating common tangents of the three
pairs.  For larger families :func:`ihull` takes the convex hull of the
union of the three-member hulls, which always lies inside the invariant
hull and can fall short of it; :func:`support_ihull` computes the whole
invariant hull directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, Optional, Sequence, Tuple

import numpy as np

from .geometry import (
    EPS,
    ConvexPolygon,
    ConvexRegion,
    GeometryError,
    Halfplane,
    Point,
    clip,
    cross,
    _hull,
    line_intersection,
    outer_common_tangents,
    _pick_separating,
)

DIM = 2
EMPTY = ConvexPolygon.empty()
# tangent pairs meeting at a smaller sine than this give corners too
# sensitive to the tolerances used when picking the tangents
CORNER_TOL = 1e-4


@dataclass(frozen=True)
class RegionFamily:
    """Ordered regions with distinct, stable agent identifiers."""

    regions: Tuple[ConvexRegion, ...]
    ids: Tuple[Hashable, ...]

    def __post_init__(self):
        if len(self.regions) < 1:
            raise GeometryError("region family must not be empty")
        if len(self.ids) != len(self.regions):
            raise GeometryError("one identifier per region required")
        if len(set(self.ids)) != len(self.ids):
            raise GeometryError(f"duplicate region identifiers in {self.ids}")

    @classmethod
    def of(cls, regions: Iterable[ConvexRegion], ids: Optional[Iterable[Hashable]] = None):
        regions = tuple(regions)
        ids = tuple(range(len(regions))) if ids is None else tuple(ids)
        return cls(regions, ids)

    @classmethod
    def points(cls, points: Iterable[Point], ids=None) -> "RegionFamily":
        return cls.of((ConvexRegion.point(p) for p in points), ids)

    def __len__(self) -> int:
        return len(self.regions)

    def __iter__(self):
        return iter(self.regions)

    def __getitem__(self, i) -> ConvexRegion:
        return self.regions[i]

    def subfamily(self, indices: Sequence[int]) -> "RegionFamily":
        return RegionFamily(tuple(self.regions[i] for i in indices),
                            tuple(self.ids[i] for i in indices))


@dataclass(frozen=True)
class PotentialConfiguration:
    """One point per region of a family."""

    points: Tuple[Point, ...]

    def fits(self, family: RegionFamily, tol: float = EPS) -> bool:
        return len(self.points) == len(family) and all(
            r.contains(p, tol) for r, p in zip(family.regions, self.points))


class IHullCache:
    """Memo of pair tangents and triple invariant hulls for one family.

    Keys are agent identifiers, so a cache must not outlive the family it
    was filled from (in the simulator: one agent's evaluation at one step).
    """

    def __init__(self):
        self._tangents: Dict[Tuple[Hashable, Hashable], tuple] = {}
        self._triples: Dict[frozenset, ConvexPolygon] = {}

    def tangents(self, a_id, a: ConvexRegion, b_id, b: ConvexRegion):
        key = (a_id, b_id)
        got = self._tangents.get(key)
        if got is None:
            got = self._tangents[key] = outer_common_tangents(a, b)
        return got

    def triple(self, family: RegionFamily, idx: Tuple[int, int, int]) -> ConvexPolygon:
        key = frozenset(family.ids[i] for i in idx)
        got = self._triples.get(key)
        if got is None:
            got = self._triples[key] = _triple_ihull(family, idx, self)
        return got


def _triple_ihull(family: RegionFamily, idx, cache: Optional[IHullCache]) -> ConvexPolygon:
    regs = tuple(family.regions[i] for i in idx)
    ids = tuple(family.ids[i] for i in idx)
    if regs[0] == regs[1] or regs[0] == regs[2] or regs[1] == regs[2]:
        # a repeated region leaves no tangent to separate it by
        return support_ihull(RegionFamily.of(regs))
    if all(r.kind == "point" for r in regs):
        return _hull(r.center for r in regs)

    # tangent[k] separates the pair not containing k from region k
    tangent = []
    for k in range(3):
        i, j = [m for m in range(3) if m != k]
        if cache is not None:
            cands = cache.tangents(ids[i], regs[i], ids[j], regs[j])
        else:
            cands = outer_common_tangents(regs[i], regs[j])
        h = _pick_separating(cands, regs[k])
        if h is None:
            return EMPTY
        tangent.append(h)

    # vertex w_i: the two tangents of the pairs that contain region i
    corners = []
    for i in range(3):
        w = line_intersection(tangent[(i + 1) % 3], tangent[(i + 2) % 3], CORNER_TOL)
        if w is None:
            break
        corners.append(w)
    else:
        if all(h.value(w) <= EPS for h in tangent for w in corners):
            a, b, c = corners
            turn = cross(a, b, c)
            if abs(turn) > 1e-6:
                return ConvexPolygon((a, b, c) if turn > 0 else (a, c, b))
            # slivers and points go through the hull's merge rules
            return _hull(corners)
        return EMPTY

    # (nearly) parallel tangents: members are collinear or touch, and the
    # three lines no longer pin down the corners
    return support_ihull(RegionFamily.of(regs))


def switch_directions(B: RegionFamily) -> np.ndarray:
    """Angles where the region attaining max_k min_{x in R_k} u.x can change.

    Regions are hulls of atoms (vertices, or one circle for a disk), so a
    switch happens only along a line touching two atoms from the same side,
    u.(c2 - c1) = r2 - r1.  Three evenly spaced angles are appended so no
    gap between consecutive directions reaches a half turn.
    """
    atoms = np.array([a for r in B.regions for a in r.atoms], dtype=float)
    i, j = np.triu_indices(len(atoms), k=1)
    d = atoms[j, :2] - atoms[i, :2]
    L = np.hypot(d[:, 0], d[:, 1])
    dr = atoms[j, 2] - atoms[i, 2]
    ok = (L > 0.0) & (np.abs(dr) <= L)
    phi = np.arctan2(d[ok, 1], d[ok, 0])
    half = np.arccos(np.clip(dr[ok] / L[ok], -1.0, 1.0))
    return np.concatenate((phi + half, phi - half, 2.0 * math.pi * np.arange(3) / 3.0))


def support_ihull(B: RegionFamily, tol: float = EPS) -> ConvexPolygon:
    """Invariant hull of any family as a finite intersection of halfplanes.

    p misses some configuration's hull exactly when u.p > g(u) for a unit u,
    where g(u) = max_k min_{x in R_k} u.x.  Each min is concave in u, so on
    an arc where one region attains the max only the arc's end directions
    bind; intersecting at every switch direction is therefore exact.

    Needs no tangent pairing, so it also copes with touching and collinear
    members.  For four or more regions it can be strictly larger than
    :func:`ihull`, which only sees three regions at a time.
    """
    if len(B) < DIM + 1:
        raise GeometryError(f"need at least d+1 regions, got {len(B)}")
    theta = switch_directions(B)
    U = np.column_stack((np.cos(theta), np.sin(theta)))
    g = np.full(len(U), -np.inf)
    for r in B.regions:
        at = np.array(r.atoms, dtype=float)
        g = np.maximum(g, (U @ at[:, :2].T - at[:, 2]).min(axis=1))
    region = _hull(v for r in B.regions for v in r.bounding_vertices())
    for (ux, uy), c in zip(U.tolist(), g.tolist()):
        n = math.hypot(ux, uy)
        region = clip(region, Halfplane((ux / n, uy / n), c / n), tol)
        if region.is_empty:
            break
    return region


def ihull_of_simplex_subset(Q: RegionFamily, cache: Optional[IHullCache] = None) -> ConvexPolygon:
    """Invariant hull of exactly three regions (empty when none exists)."""
    if len(Q) != DIM + 1:
        raise GeometryError(f"simplex subset needs exactly {DIM + 1} regions, got {len(Q)}")
    if cache is not None:
        return cache.triple(Q, (0, 1, 2))
    return _triple_ihull(Q, (0, 1, 2), None)


def ihull(B: RegionFamily, cache: Optional[IHullCache] = None) -> ConvexPolygon:
    """Hull of the union of all triple invariant hulls of a family.

    Equal to the invariant hull for three regions and contained in it for
    more; see :func:`support_ihull` for the exact set.
    """
    if len(B) < DIM + 1:
        raise GeometryError(f"need at least d+1 regions, got {len(B)}")
    if cache is None:
        cache = IHullCache()
    pts = []
    for idx in itertools.combinations(range(len(B)), DIM + 1):
        pts.extend(cache.triple(B, idx).vertices)
    if not pts:
        return EMPTY
    return _hull(pts)


def has_property_one(p: Point, Q: RegionFamily, directions: int = 360,
                     tol: float = EPS) -> bool:
    """Sampled check that every line through p leaves a whole region on each side.

    Only ``directions`` evenly spaced orientations in [0, pi) are tried, so a
    True result is a necessary condition, not a proof.
    """
    if len(Q) < DIM + 1:
        raise GeometryError(f"need at least d+1 regions, got {len(Q)}")
    if directions < 1:
        raise ValueError("directions must be positive")
    px, py = p
    for k in range(directions):
        theta = math.pi * k / directions
        ux, uy = math.cos(theta), math.sin(theta)
        level = ux * px + uy * py
        below = above = False
        for r in Q.regions:
            if not below and r.support(ux, uy) <= level + tol:
                below = True
            if not above and -r.support(-ux, -uy) >= level - tol:
                above = True
        if not (below and above):
            return False
    return True


def sample_region(region: ConvexRegion, rng: np.random.Generator, count: int) -> np.ndarray:
    """``count`` points uniform over the region's area, shape (count, 2).

    Draws are taken row by row from ``rng``, so a shorter request is a
    prefix of a longer one from the same stream state.
    """
    cx, cy = region.center
    if region.kind == "point":
        return np.tile(np.array([[cx, cy]]), (count, 1))
    if region.kind == "square":
        u = rng.uniform(-1.0, 1.0, size=(count, 2))
        return np.array([cx, cy]) + region.size * u
    if region.kind == "disk":
        u = rng.random(size=(count, 2))
        rad = region.size * np.sqrt(u[:, 0])
        ang = 2.0 * math.pi * u[:, 1]
        return np.column_stack((cx + rad * np.cos(ang), cy + rad * np.sin(ang)))
    v = np.array(region.polygon.vertices, dtype=float)
    if len(v) == 2:
        t = rng.random(size=(count, 1))
        return v[0] + t * (v[1] - v[0])
    # fan triangulation, triangle picked in proportion to area
    a, b, c = v[0], v[1:-1], v[2:]
    areas = 0.5 * np.abs((b[:, 0] - a[0]) * (c[:, 1] - a[1]) - (b[:, 1] - a[1]) * (c[:, 0] - a[0]))
    cum = np.cumsum(areas / areas.sum())
    u = rng.random(size=(count, 3))
    tri = np.minimum(np.searchsorted(cum, u[:, 0], side="right"), len(areas) - 1)
    s, t = u[:, 1], u[:, 2]
    flip = s + t > 1.0
    s = np.where(flip, 1.0 - s, s)
    t = np.where(flip, 1.0 - t, t)
    return a + s[:, None] * (b[tri] - a) + t[:, None] * (c[tri] - a)


def sample_configurations(B: RegionFamily, count: int, seed) -> np.ndarray:
    """Array (count, len(B), 2) of configurations; prefix-stable in ``count``."""
    streams = np.random.SeedSequence(seed).spawn(len(B))
    cols = [sample_region(r, np.random.default_rng(s), count) for r, s in zip(B.regions, streams)]
    return np.stack(cols, axis=1)


def sample_configuration(B: RegionFamily, rng_seed: int) -> PotentialConfiguration:
    arr = sample_configurations(B, 1, rng_seed)[0]
    return PotentialConfiguration(tuple((float(x), float(y)) for x, y in arr))
