"""Planar primitives with an absolute tolerance.

Points are plain ``(x, y)`` tuples of floats.  Polygons are convex and kept
in counter-clockwise order; empty, single-point and segment polygons are
ordinary values.  Regions (points, axis-aligned squares, disks, convex
polygons) answer support queries analytically, which is all the tangent
and containment machinery needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

Point = Tuple[float, float]

EPS = 1e-9


class GeometryError(ValueError):
    pass


def _check_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise GeometryError(f"non-finite coordinate in {p!r}")
    return (x, y)


def cross(o: Point, a: Point, b: Point) -> float:
    """z-component of (a - o) x (b - o); positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


@dataclass(frozen=True, slots=True)
class Halfplane:
    """Closed halfplane ``{p : dot(normal, p) <= offset}``."""

    normal: Point
    offset: float

    def __post_init__(self):
        if abs(math.hypot(*self.normal) - 1.0) > 1e-12:
            raise GeometryError(f"halfplane normal {self.normal} is not unit length")

    @classmethod
    def through(cls, normal: Point, p: Point) -> "Halfplane":
        """Halfplane with the given unit normal whose boundary passes through p."""
        return cls(normal, normal[0] * p[0] + normal[1] * p[1])

    def value(self, p: Point) -> float:
        # signed distance; <= 0 inside
        return self.normal[0] * p[0] + self.normal[1] * p[1] - self.offset

    def contains(self, p: Point, tol: float = EPS) -> bool:
        return self.value(p) <= tol

    def complement(self) -> "Halfplane":
        return Halfplane((-self.normal[0], -self.normal[1]), -self.offset)


class ConvexPolygon:
    """Convex polygon as a counter-clockwise vertex tuple.

    Build general inputs through :func:`convex_hull`; the constructor trusts
    its argument.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Sequence[Point] = ()):
        self.vertices: Tuple[Point, ...] = tuple(vertices)

    @classmethod
    def empty(cls) -> "ConvexPolygon":
        return _EMPTY

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.vertices)

    def __bool__(self) -> bool:
        return bool(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, ConvexPolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"ConvexPolygon({list(self.vertices)!r})"

    def area(self) -> float:
        v = self.vertices
        n = len(v)
        if n < 3:
            return 0.0
        s = 0.0
        for i in range(n):
            x1, y1 = v[i]
            x2, y2 = v[(i + 1) % n]
            s += x1 * y2 - x2 * y1
        return 0.5 * s

    def centroid(self) -> Optional[Point]:
        """Area centroid; vertex mean for (near-)degenerate polygons."""
        v = self.vertices
        n = len(v)
        if n == 0:
            return None
        if n == 1:
            return v[0]
        if n == 2:
            return (0.5 * (v[0][0] + v[1][0]), 0.5 * (v[0][1] + v[1][1]))
        # shift to the first vertex to keep the shoelace sums well conditioned
        ox, oy = v[0]
        a2 = cx = cy = 0.0
        for i in range(1, n - 1):
            x1, y1 = v[i][0] - ox, v[i][1] - oy
            x2, y2 = v[i + 1][0] - ox, v[i + 1][1] - oy
            c = x1 * y2 - x2 * y1
            a2 += c
            cx += (x1 + x2) * c
            cy += (y1 + y2) * c
        scale = max(dist(v[0], p) for p in v)
        if a2 <= 1e-12 * scale * scale:
            return (sum(p[0] for p in v) / n, sum(p[1] for p in v) / n)
        return (ox + cx / (3.0 * a2), oy + cy / (3.0 * a2))

    def halfplanes(self) -> Tuple[Halfplane, ...]:
        """Halfplanes whose intersection is the polygon (degenerate cases included)."""
        v = self.vertices
        n = len(v)
        if n == 0:
            raise GeometryError("empty polygon has no halfplane representation")
        if n == 1:
            x, y = v[0]
            return (
                Halfplane((1.0, 0.0), x),
                Halfplane((-1.0, 0.0), -x),
                Halfplane((0.0, 1.0), y),
                Halfplane((0.0, -1.0), -y),
            )
        if n == 2:
            p, q = v
            L = dist(p, q)
            dx, dy = (q[0] - p[0]) / L, (q[1] - p[1]) / L
            nx, ny = dy, -dx
            return (
                Halfplane.through((nx, ny), p),
                Halfplane.through((-nx, -ny), p),
                Halfplane.through((dx, dy), q),
                Halfplane.through((-dx, -dy), p),
            )
        out = []
        for i in range(n):
            p = v[i]
            q = v[(i + 1) % n]
            L = dist(p, q)
            # outward normal of a ccw edge is the right-hand perpendicular
            out.append(Halfplane.through(((q[1] - p[1]) / L, (p[0] - q[0]) / L), p))
        return tuple(out)

    def contains(self, p: Point, tol: float = EPS) -> bool:
        return self.distance_to(p) <= tol

    def distance_to(self, p: Point) -> float:
        """Euclidean distance from p to the polygon (0 inside, inf if empty)."""
        v = self.vertices
        n = len(v)
        if n == 0:
            return math.inf
        if n == 1:
            return dist(p, v[0])
        if n == 2:
            return _segment_distance(p, v[0], v[1])
        inside = True
        for i in range(n):
            if cross(v[i], v[(i + 1) % n], p) < 0.0:
                inside = False
                break
        if inside:
            return 0.0
        return min(_segment_distance(p, v[i], v[(i + 1) % n]) for i in range(n))

    def diameter(self) -> float:
        v = self.vertices
        return max((dist(a, b) for i, a in enumerate(v) for b in v[i + 1:]), default=0.0)


_EMPTY = ConvexPolygon(())


def _segment_distance(p: Point, a: Point, b: Point) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return dist(p, a)
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2
    t = 0.0 if t < 0.0 else 1.0 if t > 1.0 else t
    return math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)


def convex_hull(points: Iterable[Point], tol: float = EPS) -> ConvexPolygon:
    """Counter-clockwise hull without duplicate or collinear vertices.

    Points closer than ``tol`` are merged and vertices within ``tol`` of the
    chord through their neighbours are dropped.
    """
    pts = sorted(set(map(_check_point, points)))
    if not pts:
        raise GeometryError("empty point set")
    return _hull_sorted(pts, tol)


def _merge_close(pts, tol: float):
    """Drop points within tol of an earlier kept one; pts sorted by x."""
    tol2 = tol * tol
    kept = []
    for p in pts:
        px, py = p
        dup = False
        # near-duplicates differ by at most tol in x: scan back only that far
        for q in reversed(kept):
            if q[0] < px - tol:
                break
            if (px - q[0]) ** 2 + (py - q[1]) ** 2 <= tol2:
                dup = True
                break
        if not dup:
            kept.append(p)
    return kept


def _drop_flat_vertices(v, tol: float):
    """Remove vertices within tol of the segment joining their neighbours."""
    v = list(v)
    changed = True
    while changed and len(v) >= 3:
        changed = False
        for i in range(len(v)):
            if _segment_distance(v[i], v[i - 1], v[(i + 1) % len(v)]) <= tol:
                del v[i]
                changed = True
                break
    return v


def _hull_sorted(pts, tol: float) -> ConvexPolygon:
    # pts: sorted, finite, deduplicated
    pts = _merge_close(pts, tol)
    if len(pts) == 1:
        return ConvexPolygon(pts)

    def chain(seq):
        out = []
        for p in seq:
            px, py = p
            while len(out) >= 2:
                ox, oy = out[-2]
                ax, ay = out[-1]
                if (ax - ox) * (py - oy) - (ay - oy) * (px - ox) <= 0.0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    # flatness is judged on the finished cycle, where sort order along a
    # near-vertical edge no longer matters
    hull = _drop_flat_vertices(lower[:-1] + upper[:-1], tol)
    if len(hull) <= 2:
        # collinear input: the point farthest from any input point is an
        # extreme one, and the point farthest from that is the other
        a = max(pts, key=lambda q: (q[0] - pts[0][0]) ** 2 + (q[1] - pts[0][1]) ** 2)
        b = max(pts, key=lambda q: (q[0] - a[0]) ** 2 + (q[1] - a[1]) ** 2)
        if dist(a, b) <= tol:
            return ConvexPolygon((a,))
        return ConvexPolygon((a, b) if a < b else (b, a))
    k = hull.index(min(hull))
    return ConvexPolygon(tuple(hull[k:] + hull[:k]))


def _hull(points, tol: float = EPS) -> ConvexPolygon:
    """convex_hull for trusted (finite, tuple) points."""
    pts = sorted(set(points))
    if not pts:
        return _EMPTY
    return _hull_sorted(pts, tol)


def _normalize(vertices: Sequence[Point], tol: float = EPS) -> ConvexPolygon:
    """Clean a vertex cycle that is already convex and counter-clockwise."""
    out = []
    for p in vertices:
        if out and dist(out[-1], p) <= tol:
            continue
        out.append(p)
    while len(out) > 1 and dist(out[0], out[-1]) <= tol:
        out.pop()
    n = len(out)
    if n >= 3:
        for i in range(n):
            o, a, b = out[i - 1], out[i], out[(i + 1) % n]
            if cross(o, a, b) <= tol * dist(o, b):
                # near-collinear or sliver: let the hull routine sort it out
                return _hull_sorted(sorted(set(out)), tol)
        return ConvexPolygon(out)
    return _hull_sorted(sorted(set(out)), tol) if out else _EMPTY


def clip(poly: ConvexPolygon, h: Halfplane, tol: float = EPS) -> ConvexPolygon:
    """Intersection of a convex polygon with a closed halfplane."""
    v = poly.vertices
    if not v:
        return poly
    nx, ny = h.normal
    c = h.offset
    s = [nx * p[0] + ny * p[1] - c for p in v]
    if max(s) <= tol:
        return poly
    if min(s) > tol:
        return _EMPTY
    n = len(v)
    if n == 1:
        return _EMPTY
    out = []
    for i in range(n):
        p, sp = v[i], s[i]
        q, sq = v[(i + 1) % n], s[(i + 1) % n]
        if sp <= tol:
            out.append(p)
        if (sp < 0.0 < sq and sq > tol) or (sq < 0.0 < sp and sp > tol):
            t = sp / (sp - sq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return _normalize(out, tol)


def intersect(a: ConvexPolygon, b: ConvexPolygon, tol: float = EPS) -> ConvexPolygon:
    """Intersection of two convex polygons (possibly empty or degenerate)."""
    if a.is_empty or b.is_empty:
        return _EMPTY
    out = a
    for h in b.halfplanes():
        out = clip(out, h, tol)
        if out.is_empty:
            break
    return out


def polygon_from_halfplanes(halfplanes: Iterable[Halfplane], bound: ConvexPolygon,
                            tol: float = EPS) -> ConvexPolygon:
    out = bound
    for h in halfplanes:
        out = clip(out, h, tol)
        if out.is_empty:
            break
    return out


def line_intersection(h1: Halfplane, h2: Halfplane, tol: float = 1e-12) -> Optional[Point]:
    """Point on both boundary lines, or None when they are (nearly) parallel."""
    (a1, b1), c1 = h1.normal, h1.offset
    (a2, b2), c2 = h2.normal, h2.offset
    det = a1 * b2 - a2 * b1
    if abs(det) <= tol:
        return None
    return ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)


def hausdorff(a: ConvexPolygon, b: ConvexPolygon) -> float:
    """Hausdorff distance between convex polygons (attained at vertices)."""
    if a.is_empty and b.is_empty:
        return 0.0
    if a.is_empty or b.is_empty:
        return math.inf
    return max(max(b.distance_to(p) for p in a), max(a.distance_to(p) for p in b))


def symmetric_difference_area(a: ConvexPolygon, b: ConvexPolygon) -> float:
    return a.area() + b.area() - 2.0 * intersect(a, b).area()


# ---------------------------------------------------------------- regions

_KINDS = ("point", "square", "disk", "polygon")


class ConvexRegion:
    """Bounded closed convex region: a point, square, disk or convex polygon.

    ``center`` is the observed state the region was built around (the
    vertex mean for polygons).  ``size`` is the square half-width or disk
    radius and 0 otherwise.
    """

    __slots__ = ("kind", "center", "size", "polygon", "atoms", "_key")

    def __init__(self, kind: str, center: Point, size: float = 0.0,
                 polygon: Optional[ConvexPolygon] = None):
        if kind not in _KINDS:
            raise GeometryError(f"unknown region shape {kind!r}")
        center = _check_point(center)
        size = float(size)
        if kind in ("square", "disk"):
            if not (size > 0.0 and math.isfinite(size)):
                raise GeometryError(f"{kind} size must be positive and finite, got {size}; "
                                    "use a point region for zero imprecision")
        elif size != 0.0:
            raise GeometryError(f"{kind} region takes no size")
        if kind == "polygon":
            if polygon is None or polygon.is_empty:
                raise GeometryError("polygon region needs a non-empty ConvexPolygon")
        self.kind = kind
        self.center = center
        self.size = size
        self.polygon = polygon
        cx, cy = center
        # atoms: circles (x, y, r) whose hull is the region; vertices have r = 0
        if kind == "point":
            self.atoms = ((cx, cy, 0.0),)
        elif kind == "square":
            w = size
            self.atoms = ((cx - w, cy - w, 0.0), (cx + w, cy - w, 0.0),
                          (cx + w, cy + w, 0.0), (cx - w, cy + w, 0.0))
        elif kind == "disk":
            self.atoms = ((cx, cy, size),)
        else:
            self.atoms = tuple((x, y, 0.0) for x, y in polygon.vertices)
        self._key = (kind, center, size, polygon.vertices if polygon is not None else None)

    @classmethod
    def point(cls, p: Point) -> "ConvexRegion":
        return cls("point", p)

    @classmethod
    def square(cls, center: Point, half_width: float) -> "ConvexRegion":
        return cls("square", center, half_width)

    @classmethod
    def disk(cls, center: Point, radius: float) -> "ConvexRegion":
        return cls("disk", center, radius)

    @classmethod
    def from_polygon(cls, poly: ConvexPolygon) -> "ConvexRegion":
        v = poly.vertices
        if not v:
            raise GeometryError("polygon region needs a non-empty ConvexPolygon")
        if len(v) == 1:
            return cls.point(v[0])
        c = (sum(p[0] for p in v) / len(v), sum(p[1] for p in v) / len(v))
        return cls("polygon", c, 0.0, poly)

    def __eq__(self, other) -> bool:
        return isinstance(other, ConvexRegion) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        if self.kind == "point":
            return f"ConvexRegion.point({self.center})"
        if self.kind == "polygon":
            return f"ConvexRegion.from_polygon({self.polygon!r})"
        return f"ConvexRegion.{self.kind}({self.center}, {self.size})"

    def support(self, ux: float, uy: float) -> float:
        """max over the region of ux*x + uy*y."""
        cx, cy = self.center
        k = self.kind
        if k == "square":
            return cx * ux + cy * uy + self.size * (abs(ux) + abs(uy))
        if k == "point":
            return cx * ux + cy * uy
        if k == "disk":
            return cx * ux + cy * uy + self.size * math.hypot(ux, uy)
        return max(x * ux + y * uy for x, y, _ in self.atoms)

    def bounding_vertices(self) -> Tuple[Point, ...]:
        """Vertices of a polygon containing the region (exact for polygonal kinds)."""
        if self.kind == "disk":
            cx, cy = self.center
            r = self.size
            return ((cx - r, cy - r), (cx + r, cy - r), (cx + r, cy + r), (cx - r, cy + r))
        return tuple((x, y) for x, y, _ in self.atoms)

    def contains(self, p: Point, tol: float = EPS) -> bool:
        cx, cy = self.center
        if self.kind == "point":
            return dist(p, self.center) <= tol
        if self.kind == "square":
            return max(abs(p[0] - cx), abs(p[1] - cy)) <= self.size + tol
        if self.kind == "disk":
            return dist(p, self.center) <= self.size + tol
        return self.polygon.contains(p, tol)


def support(region: ConvexRegion, direction: Point) -> float:
    return region.support(direction[0], direction[1])


def region_inside(region: ConvexRegion, h: Halfplane, tol: float = EPS) -> bool:
    return region.support(h.normal[0], h.normal[1]) <= h.offset + tol


def outer_common_tangents(a: ConvexRegion, b: ConvexRegion,
                          tol: float = EPS) -> Tuple[Tuple[Point, float], ...]:
    """Lines ``u.x = c`` touching both regions with both inside ``u.x <= c``.

    Candidates come from pairing the atoms of the two regions (vertex-vertex,
    vertex-arc, arc-arc); a candidate survives if neither region pokes past
    it.  Translates of one shape short-circuit to the two lines parallel to
    the centre line.  Identical regions have no determinate tangent and
    yield nothing.
    """
    if a == b:
        return ()
    if a.kind == b.kind and a.kind in ("square", "disk", "point") and a.size == b.size:
        dx = b.center[0] - a.center[0]
        dy = b.center[1] - a.center[1]
        L = math.hypot(dx, dy)
        if L <= tol:
            return ()
        out = []
        for ux, uy in ((-dy / L, dx / L), (dy / L, -dx / L)):
            out.append(((ux, uy), a.support(ux, uy)))
        return tuple(out)

    found = []
    for x1, y1, r1 in a.atoms:
        for x2, y2, r2 in b.atoms:
            dx, dy = x2 - x1, y2 - y1
            L = math.hypot(dx, dy)
            if L <= tol:
                continue
            cos = (r1 - r2) / L
            if abs(cos) > 1.0:
                continue
            sin = math.sqrt(max(0.0, 1.0 - cos * cos))
            ex, ey = dx / L, dy / L
            for sgn in (1.0, -1.0):
                ux = cos * ex - sgn * sin * ey
                uy = cos * ey + sgn * sin * ex
                c = x1 * ux + y1 * uy + r1
                if a.support(ux, uy) > c + tol or b.support(ux, uy) > c + tol:
                    continue
                if any(abs(ux - u[0]) <= tol and abs(uy - u[1]) <= tol and abs(c - cc) <= tol
                       for u, cc in found):
                    continue
                found.append(((ux, uy), c))
    return tuple(found)


def separating_tangent(f: Sequence[ConvexRegion], other: ConvexRegion,
                       tol: float = EPS) -> Optional[Halfplane]:
    """Common tangent of the two regions in ``f`` that keeps ``other`` on the far side.

    The returned halfplane is the closed side containing ``other``; both
    members of ``f`` lie in its closed complement and touch the boundary.
    Returns None when no such line exists.
    """
    a, b = f
    return _pick_separating(outer_common_tangents(a, b, tol), other, tol)


def _pick_separating(candidates, other: ConvexRegion, tol: float = EPS) -> Optional[Halfplane]:
    for (ux, uy), c in candidates:
        # other must satisfy u.x >= c everywhere: min over other of u.x is -support(-u)
        if -other.support(-ux, -uy) >= c - tol:
            return Halfplane((-ux, -uy), -c)
    return None
