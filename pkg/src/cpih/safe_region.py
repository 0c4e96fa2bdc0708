"""Centerpoint-style safe regions over exact points or imprecision regions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernels
from .geometry import EPS, ConvexPolygon, GeometryError, Point, intersect
from .invariant_hull import DIM, IHullCache, RegionFamily, ihull

MAX_FAMILY = 15


@dataclass(frozen=True)
class SafeRegionResult:
    region: ConvexPolygon
    k: int
    subsets_evaluated: int

    @property
    def is_empty(self) -> bool:
        return self.region.is_empty


def subset_size(N: int, d: int = DIM) -> int:
    """Smallest subset size that must contain a centerpoint: floor(dN/(d+1)) + 1."""
    if N < d + 1:
        raise GeometryError(f"neighborhood too small: N={N} < d+1={d + 1}")
    return (d * N) // (d + 1) + 1


METHODS = ("auto", "compiled", "reference")


def cpih_region(B: RegionFamily, cache: Optional[IHullCache] = None,
                max_size: int = MAX_FAMILY, method: str = "auto") -> SafeRegionResult:
    """Intersection of the invariant hulls of all k-subsets of ``B``.

    Subsets are visited in lexicographic index order and the scan stops as
    soon as the running intersection is empty.  Families larger than
    ``max_size`` are refused rather than sampled.

    ``method="reference"`` runs the object-level construction;
    ``"compiled"`` runs the array kernels (points, squares and disks only);
    ``"auto"`` picks the kernels whenever they apply and no cache is given.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    N = len(B)
    k = subset_size(N, DIM)
    if N > max_size:
        raise GeometryError(f"family of {N} regions exceeds the exact-enumeration cap {max_size}")
    if method != "reference" and cache is None:
        arrays = kernels.encode(B.regions)
        if arrays is not None:
            verts, evaluated = kernels.cpih_region_arrays(*arrays, k)
            region = ConvexPolygon(tuple((float(x), float(y)) for x, y in verts))
            return SafeRegionResult(region, k, int(evaluated))
        if method == "compiled":
            raise GeometryError("compiled kernels handle point, square and disk regions only")
    if cache is None:
        cache = IHullCache()
    region = None
    evaluated = 0
    for idx in itertools.combinations(range(N), k):
        evaluated += 1
        hull = ihull(B.subfamily(idx), cache)
        region = hull if region is None else intersect(region, hull)
        if region.is_empty:
            break
    return SafeRegionResult(region, k, evaluated)


def select_safe_point(r: SafeRegionResult) -> Optional[Point]:
    """Area centroid of the safe region, or None when it is empty."""
    return r.region.centroid()


def centerpoint_check(p: Point, S: Sequence[Point], directions: int = 360,
                      tol: float = EPS) -> bool:
    """Sampled centerpoint test: each closed halfplane through p holds >= N/3 points."""
    N = len(S)
    if N < DIM + 1:
        raise GeometryError(f"need at least d+1 points, got {N}")
    px, py = p
    for k in range(directions):
        theta = math.pi * k / directions
        ux, uy = math.cos(theta), math.sin(theta)
        level = ux * px + uy * py
        lo = hi = 0
        for x, y in S:
            s = ux * x + uy * y - level
            if s <= tol:
                lo += 1
            if s >= -tol:
                hi += 1
        # at least N/(d+1), compared in integers
        if (DIM + 1) * min(lo, hi) < N:
            return False
    return True
