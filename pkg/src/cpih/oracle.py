"""Brute-force references for the geometric constructions.

Both oracles work straight from the definitions and share none of the
tangent machinery: the invariant hull is approximated by intersecting the
hulls of many sampled configurations, and the centerpoint region by
clipping with every halfplane bounded by a line through two input points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import (
    EPS,
    ConvexPolygon,
    ConvexRegion,
    GeometryError,
    Halfplane,
    Point,
    clip,
    convex_hull,
    hausdorff,
    intersect,
)
from .invariant_hull import RegionFamily, ihull, sample_configurations

CONTAINMENT_TOL = 1e-7
MAX_BRUTE_POINTS = 9


@dataclass(frozen=True)
class OracleReport:
    target: str
    samples: int
    hausdorff: float
    violations: int

    def __post_init__(self):
        if self.hausdorff < 0 or self.violations < 0:
            raise ValueError("distances and violation counts are nonnegative")


SAMPLING = ("extreme", "area")


def sample_extreme_points(region: ConvexRegion, rng: np.random.Generator, count: int) -> np.ndarray:
    """``count`` extreme points of the region: uniform vertex, or uniform angle on a disk."""
    u = rng.random(count)
    if region.kind == "disk":
        a = 2.0 * math.pi * u
        cx, cy = region.center
        return np.column_stack((cx + region.size * np.cos(a), cy + region.size * np.sin(a)))
    v = np.array([(x, y) for x, y, _ in region.atoms])
    return v[np.minimum((u * len(v)).astype(np.int64), len(v) - 1)]


def extreme_configurations(B: RegionFamily, count: int, seed) -> np.ndarray:
    """Array (count, len(B), 2) of configurations built from extreme points."""
    streams = np.random.SeedSequence(seed).spawn(len(B))
    cols = [sample_extreme_points(r, np.random.default_rng(s), count) for r, s in zip(B.regions, streams)]
    return np.stack(cols, axis=1)


def mc_ihull(B: RegionFamily, samples: int, seed, sampling: str = "extreme") -> ConvexPolygon:
    """Intersection of the hulls of ``samples`` sampled configurations of ``B``.

    A superset of the invariant hull that can only shrink as ``samples``
    grows; the configurations for a smaller count are a prefix of those for
    a larger one under the same seed.

    A configuration whose hull misses p can be pushed, point by point, to
    extreme points of the regions without ever reaching p, so sampling
    extreme points (the default) loses nothing and converges far faster
    than ``sampling="area"``, which draws uniformly over each region.
    """
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    if sampling == "extreme":
        configs = extreme_configurations(B, samples, seed)
    elif sampling == "area":
        configs = sample_configurations(B, samples, seed)
    else:
        raise ValueError(f"sampling must be one of {SAMPLING}, got {sampling!r}")
    out = None
    for cfg in configs:
        hull = convex_hull(map(tuple, cfg.tolist()))
        out = hull if out is None else intersect(out, hull)
        if out.is_empty:
            break
    return out


def audit_ihull(B: RegionFamily, samples: int, seed=0, target: str = "family",
                sampling: str = "extreme") -> OracleReport:
    """Compare ihull(B) with its Monte-Carlo approximation.

    ``violations`` counts ihull vertices outside the oracle polygon by more
    than CONTAINMENT_TOL; it is zero for a correct ihull.
    """
    exact = ihull(B)
    approx = mc_ihull(B, samples, seed, sampling)
    violations = sum(approx.distance_to(p) > CONTAINMENT_TOL for p in exact.vertices)
    return OracleReport(target, samples, hausdorff(exact, approx), violations)


def brute_centerpoint_region(S: Sequence[Point], tol: float = EPS) -> ConvexPolygon:
    """Centerpoint region of 3..9 points by exhaustive halfplane clipping.

    A point is a centerpoint when every closed halfplane containing it
    holds at least N/3 of the points; equivalently it lies in every closed
    halfplane holding more than 2N/3 of them.  The binding halfplanes are
    bounded by lines through two input points, so those are all tried,
    each side counted closed.
    """
    pts = [tuple(map(float, p)) for p in S]
    N = len(pts)
    if not (3 <= N <= MAX_BRUTE_POINTS):
        raise GeometryError(f"brute-force centerpoint region needs 3..{MAX_BRUTE_POINTS} points, got {N}")
    need = (2 * N) // 3 + 1
    region = convex_hull(pts)
    for p, q in itertools.combinations(pts, 2):
        L = math.hypot(q[0] - p[0], q[1] - p[1])
        if L <= tol:
            continue
        n = ((q[1] - p[1]) / L, (p[0] - q[0]) / L)
        for h in (Halfplane.through(n, p), Halfplane.through((-n[0], -n[1]), p)):
            if sum(h.value(x) <= tol for x in pts) >= need:
                region = clip(region, h, tol)
        if region.is_empty:
            break
    return region
