"""Compiled CPIH regions for families of points, squares and disks.

The simulator evaluates thousands of CPIH regions per run, which is too
slow through the object-level construction.  These kernels repeat that
construction step for step on flat arrays (same tangent candidate order,
same tolerances, same hull merge rules) and are checked against it in the
test suite.  Polygon regions are not supported here.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

EPS = 1e-9
CORNER_TOL = 1e-4
POINT, SQUARE, DISK = 0, 1, 2
KIND_CODES = {"point": POINT, "square": SQUARE, "disk": DISK}


@njit(cache=True)
def _support(k, cx, cy, s, ux, uy):
    if k == SQUARE:
        return cx * ux + cy * uy + s * (abs(ux) + abs(uy))
    if k == DISK:
        return cx * ux + cy * uy + s * math.hypot(ux, uy)
    return cx * ux + cy * uy


@njit(cache=True)
def _atoms(k, cx, cy, s):
    if k == SQUARE:
        out = np.empty((4, 3))
        out[0, 0] = cx - s; out[0, 1] = cy - s
        out[1, 0] = cx + s; out[1, 1] = cy - s
        out[2, 0] = cx + s; out[2, 1] = cy + s
        out[3, 0] = cx - s; out[3, 1] = cy + s
        out[:, 2] = 0.0
        return out
    out = np.empty((1, 3))
    out[0, 0] = cx
    out[0, 1] = cy
    out[0, 2] = s if k == DISK else 0.0
    return out


@njit(cache=True)
def _bounding(k, cx, cy, s):
    if k == POINT:
        out = np.empty((1, 2))
        out[0, 0] = cx
        out[0, 1] = cy
        return out
    out = np.empty((4, 2))
    out[0, 0] = cx - s; out[0, 1] = cy - s
    out[1, 0] = cx + s; out[1, 1] = cy - s
    out[2, 0] = cx + s; out[2, 1] = cy + s
    out[3, 0] = cx - s; out[3, 1] = cy + s
    return out


@njit(cache=True)
def _same(kind, cx, cy, sz, a, b):
    return kind[a] == kind[b] and cx[a] == cx[b] and cy[a] == cy[b] and sz[a] == sz[b]


@njit(cache=True)
def _tangents(kind, cx, cy, sz, a, b, tol):
    """Outer common tangents (ux, uy, c) of regions a and b, in reference order."""
    out = np.empty((32, 3))
    if _same(kind, cx, cy, sz, a, b):
        return out[:0]
    if kind[a] == kind[b] and sz[a] == sz[b]:
        dx = cx[b] - cx[a]
        dy = cy[b] - cy[a]
        L = math.hypot(dx, dy)
        if L <= tol:
            return out[:0]
        ux, uy = -dy / L, dx / L
        out[0, 0] = ux; out[0, 1] = uy
        out[0, 2] = _support(kind[a], cx[a], cy[a], sz[a], ux, uy)
        ux, uy = dy / L, -dx / L
        out[1, 0] = ux; out[1, 1] = uy
        out[1, 2] = _support(kind[a], cx[a], cy[a], sz[a], ux, uy)
        return out[:2]
    A = _atoms(kind[a], cx[a], cy[a], sz[a])
    B = _atoms(kind[b], cx[b], cy[b], sz[b])
    n = 0
    for p in range(A.shape[0]):
        x1, y1, r1 = A[p, 0], A[p, 1], A[p, 2]
        for q in range(B.shape[0]):
            x2, y2, r2 = B[q, 0], B[q, 1], B[q, 2]
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
                if _support(kind[a], cx[a], cy[a], sz[a], ux, uy) > c + tol:
                    continue
                if _support(kind[b], cx[b], cy[b], sz[b], ux, uy) > c + tol:
                    continue
                dup = False
                for m in range(n):
                    if abs(ux - out[m, 0]) <= tol and abs(uy - out[m, 1]) <= tol and abs(c - out[m, 2]) <= tol:
                        dup = True
                        break
                if dup:
                    continue
                out[n, 0] = ux
                out[n, 1] = uy
                out[n, 2] = c
                n += 1
    return out[:n]


# ------------------------------------------------------------ polygons
# A polygon is an (m, 2) array of counter-clockwise vertices.

@njit(cache=True)
def _sorted_unique(P):
    m = P.shape[0]
    Q = P.copy()
    for i in range(1, m):
        x, y = Q[i, 0], Q[i, 1]
        j = i - 1
        while j >= 0 and (Q[j, 0] > x or (Q[j, 0] == x and Q[j, 1] > y)):
            Q[j + 1, 0] = Q[j, 0]
            Q[j + 1, 1] = Q[j, 1]
            j -= 1
        Q[j + 1, 0] = x
        Q[j + 1, 1] = y
    n = 0
    for i in range(m):
        if n > 0 and Q[i, 0] == Q[n - 1, 0] and Q[i, 1] == Q[n - 1, 1]:
            continue
        Q[n, 0] = Q[i, 0]
        Q[n, 1] = Q[i, 1]
        n += 1
    return Q[:n]


@njit(cache=True)
def _chain(pts, order, out):
    n = 0
    for idx in order:
        px, py = pts[idx, 0], pts[idx, 1]
        while n >= 2:
            ox, oy = out[n - 2, 0], out[n - 2, 1]
            ax, ay = out[n - 1, 0], out[n - 1, 1]
            if (ax - ox) * (py - oy) - (ay - oy) * (px - ox) <= 0.0:
                n -= 1
            else:
                break
        out[n, 0] = px
        out[n, 1] = py
        n += 1
    return n


@njit(cache=True)
def _segment_distance(px, py, ax, ay, bx, by):
    dx, dy = bx - ax, by - ay
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / L2
    t = 0.0 if t < 0.0 else 1.0 if t > 1.0 else t
    return math.hypot(px - ax - t * dx, py - ay - t * dy)


@njit(cache=True)
def _drop_flat_vertices(V, tol):
    v = V.copy()
    n = v.shape[0]
    changed = True
    while changed and n >= 3:
        changed = False
        for i in range(n):
            o = (i - 1) % n
            b = (i + 1) % n
            if _segment_distance(v[i, 0], v[i, 1], v[o, 0], v[o, 1], v[b, 0], v[b, 1]) <= tol:
                for j in range(i, n - 1):
                    v[j, 0] = v[j + 1, 0]
                    v[j, 1] = v[j + 1, 1]
                n -= 1
                changed = True
                break
    return v[:n]


@njit(cache=True)
def _hull(P, tol):
    """Counter-clockwise hull with the reference merge rules."""
    if P.shape[0] == 0:
        return np.empty((0, 2))
    tol2 = tol * tol
    pts = _sorted_unique(P)
    m = pts.shape[0]
    merged = np.empty((m, 2))
    n = 0
    for i in range(m):
        px, py = pts[i, 0], pts[i, 1]
        dup = False
        j = n - 1
        while j >= 0 and merged[j, 0] >= px - tol:
            if (px - merged[j, 0]) ** 2 + (py - merged[j, 1]) ** 2 <= tol2:
                dup = True
                break
            j -= 1
        if not dup:
            merged[n, 0] = px
            merged[n, 1] = py
            n += 1
    pts = merged[:n]
    if n == 1:
        return pts.copy()
    lower = np.empty((n, 2))
    upper = np.empty((n, 2))
    nl = _chain(pts, np.arange(n), lower)
    nu = _chain(pts, np.arange(n - 1, -1, -1), upper)
    cyc = np.empty((nl - 1 + nu - 1, 2))
    cyc[:nl - 1] = lower[:nl - 1]
    cyc[nl - 1:] = upper[:nu - 1]
    hull = _drop_flat_vertices(cyc, tol)
    m = hull.shape[0]
    if m > 2:
        k = 0
        for i in range(1, m):
            if hull[i, 0] < hull[k, 0] or (hull[i, 0] == hull[k, 0] and hull[i, 1] < hull[k, 1]):
                k = i
        out = np.empty((m, 2))
        for i in range(m):
            out[i] = hull[(k + i) % m]
        return out
    # collinear: farthest from pts[0], then farthest from that
    ia = 0
    best = -1.0
    for i in range(n):
        d2 = (pts[i, 0] - pts[0, 0]) ** 2 + (pts[i, 1] - pts[0, 1]) ** 2
        if d2 > best:
            best, ia = d2, i
    ib = ia
    best = -1.0
    for i in range(n):
        d2 = (pts[i, 0] - pts[ia, 0]) ** 2 + (pts[i, 1] - pts[ia, 1]) ** 2
        if d2 > best:
            best, ib = d2, i
    if math.hypot(pts[ia, 0] - pts[ib, 0], pts[ia, 1] - pts[ib, 1]) <= tol:
        return pts[ia:ia + 1].copy()
    if ib < ia:
        ia, ib = ib, ia
    out = np.empty((2, 2))
    out[0] = pts[ia]
    out[1] = pts[ib]
    return out


@njit(cache=True)
def _normalize(V, tol):
    m = V.shape[0]
    out = np.empty((m, 2))
    n = 0
    for i in range(m):
        if n > 0 and math.hypot(out[n - 1, 0] - V[i, 0], out[n - 1, 1] - V[i, 1]) <= tol:
            continue
        out[n] = V[i]
        n += 1
    while n > 1 and math.hypot(out[0, 0] - out[n - 1, 0], out[0, 1] - out[n - 1, 1]) <= tol:
        n -= 1
    out = out[:n]
    if n >= 3:
        for i in range(n):
            o = out[(i - 1) % n]
            a = out[i]
            b = out[(i + 1) % n]
            cr = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
            if cr <= tol * math.hypot(o[0] - b[0], o[1] - b[1]):
                return _hull(out, tol)
        return out
    if n == 0:
        return out
    return _hull(out, tol)


@njit(cache=True)
def _clip(V, nx, ny, c, tol):
    n = V.shape[0]
    if n == 0:
        return V
    s = np.empty(n)
    for i in range(n):
        s[i] = nx * V[i, 0] + ny * V[i, 1] - c
    if s.max() <= tol:
        return V
    if s.min() > tol or n == 1:
        return np.empty((0, 2))
    out = np.empty((2 * n, 2))
    m = 0
    for i in range(n):
        j = (i + 1) % n
        sp, sq = s[i], s[j]
        if sp <= tol:
            out[m] = V[i]
            m += 1
        if (sp < 0.0 < sq and sq > tol) or (sq < 0.0 < sp and sp > tol):
            t = sp / (sp - sq)
            out[m, 0] = V[i, 0] + t * (V[j, 0] - V[i, 0])
            out[m, 1] = V[i, 1] + t * (V[j, 1] - V[i, 1])
            m += 1
    return _normalize(out[:m], tol)


@njit(cache=True)
def _halfplanes(V):
    """Rows (nx, ny, offset) whose intersection is the polygon."""
    n = V.shape[0]
    if n == 1:
        x, y = V[0, 0], V[0, 1]
        H = np.empty((4, 3))
        H[0, 0] = 1.0; H[0, 1] = 0.0; H[0, 2] = x
        H[1, 0] = -1.0; H[1, 1] = 0.0; H[1, 2] = -x
        H[2, 0] = 0.0; H[2, 1] = 1.0; H[2, 2] = y
        H[3, 0] = 0.0; H[3, 1] = -1.0; H[3, 2] = -y
        return H
    if n == 2:
        px, py, qx, qy = V[0, 0], V[0, 1], V[1, 0], V[1, 1]
        L = math.hypot(px - qx, py - qy)
        dx, dy = (qx - px) / L, (qy - py) / L
        nx, ny = dy, -dx
        H = np.empty((4, 3))
        H[0, 0] = nx; H[0, 1] = ny; H[0, 2] = nx * px + ny * py
        H[1, 0] = -nx; H[1, 1] = -ny; H[1, 2] = -nx * px + -ny * py
        H[2, 0] = dx; H[2, 1] = dy; H[2, 2] = dx * qx + dy * qy
        H[3, 0] = -dx; H[3, 1] = -dy; H[3, 2] = -dx * px + -dy * py
        return H
    H = np.empty((n, 3))
    for i in range(n):
        px, py = V[i, 0], V[i, 1]
        qx, qy = V[(i + 1) % n, 0], V[(i + 1) % n, 1]
        L = math.hypot(px - qx, py - qy)
        nx, ny = (qy - py) / L, (px - qx) / L
        H[i, 0] = nx
        H[i, 1] = ny
        H[i, 2] = nx * px + ny * py
    return H


@njit(cache=True)
def _intersect(A, B, tol):
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.empty((0, 2))
    H = _halfplanes(B)
    out = A
    for i in range(H.shape[0]):
        out = _clip(out, H[i, 0], H[i, 1], H[i, 2], tol)
        if out.shape[0] == 0:
            break
    return out


# ----------------------------------------------------- invariant hulls

@njit(cache=True)
def _support_ihull(kind, cx, cy, sz, idx):
    """Halfplane form of the invariant hull of three regions (reference order)."""
    A = np.empty((12, 3))
    na = 0
    nb = 0
    Bv = np.empty((12, 2))
    for m in range(3):
        r = idx[m]
        at = _atoms(kind[r], cx[r], cy[r], sz[r])
        A[na:na + at.shape[0]] = at
        na += at.shape[0]
        bv = _bounding(kind[r], cx[r], cy[r], sz[r])
        Bv[nb:nb + bv.shape[0]] = bv
        nb += bv.shape[0]
    npair = na * (na - 1) // 2
    plus = np.empty(npair)
    minus = np.empty(npair)
    cnt = 0
    for i in range(na):
        for j in range(i + 1, na):
            dx = A[j, 0] - A[i, 0]
            dy = A[j, 1] - A[i, 1]
            L = math.hypot(dx, dy)
            dr = A[j, 2] - A[i, 2]
            if L > 0.0 and abs(dr) <= L:
                phi = math.atan2(dy, dx)
                q = min(1.0, max(-1.0, dr / L))
                half = math.acos(q)
                plus[cnt] = phi + half
                minus[cnt] = phi - half
                cnt += 1
    theta = np.empty(2 * cnt + 3)
    theta[:cnt] = plus[:cnt]
    theta[cnt:2 * cnt] = minus[:cnt]
    for m in range(3):
        theta[2 * cnt + m] = 2.0 * math.pi * m / 3.0
    out = _hull(Bv[:nb], EPS)
    for t in range(theta.shape[0]):
        ux = math.cos(theta[t])
        uy = math.sin(theta[t])
        g = -np.inf
        for m in range(3):
            r = idx[m]
            at = _atoms(kind[r], cx[r], cy[r], sz[r])
            low = np.inf
            for a in range(at.shape[0]):
                low = min(low, ux * at[a, 0] + uy * at[a, 1] - at[a, 2])
            g = max(g, low)
        n = math.hypot(ux, uy)
        out = _clip(out, ux / n, uy / n, g / n, EPS)
        if out.shape[0] == 0:
            break
    return out


@njit(cache=True)
def _triple(kind, cx, cy, sz, idx):
    """Invariant hull of regions idx[0], idx[1], idx[2]."""
    i0, i1, i2 = idx[0], idx[1], idx[2]
    s01 = _same(kind, cx, cy, sz, i0, i1)
    s02 = _same(kind, cx, cy, sz, i0, i2)
    s12 = _same(kind, cx, cy, sz, i1, i2)
    if s01 or s02 or s12:
        return _support_ihull(kind, cx, cy, sz, idx)
    if kind[i0] == POINT and kind[i1] == POINT and kind[i2] == POINT:
        P = np.empty((3, 2))
        for m in range(3):
            P[m, 0] = cx[idx[m]]
            P[m, 1] = cy[idx[m]]
        return _hull(P, EPS)

    T = np.empty((3, 3))   # inner halfplanes (nx, ny, offset)
    for k in range(3):
        if k == 0:
            a, b = i1, i2
        elif k == 1:
            a, b = i0, i2
        else:
            a, b = i0, i1
        o = idx[k]
        cands = _tangents(kind, cx, cy, sz, a, b, EPS)
        found = False
        for m in range(cands.shape[0]):
            ux, uy, c = cands[m, 0], cands[m, 1], cands[m, 2]
            if -_support(kind[o], cx[o], cy[o], sz[o], -ux, -uy) >= c - EPS:
                T[k, 0] = -ux
                T[k, 1] = -uy
                T[k, 2] = -c
                found = True
                break
        if not found:
            return np.empty((0, 2))

    W = np.empty((3, 2))
    parallel = False
    for i in range(3):
        p = (i + 1) % 3
        q = (i + 2) % 3
        a1, b1, c1 = T[p, 0], T[p, 1], T[p, 2]
        a2, b2, c2 = T[q, 0], T[q, 1], T[q, 2]
        det = a1 * b2 - a2 * b1
        if abs(det) <= CORNER_TOL:
            parallel = True
            break
        W[i, 0] = (c1 * b2 - c2 * b1) / det
        W[i, 1] = (a1 * c2 - a2 * c1) / det
    if not parallel:
        for k in range(3):
            for i in range(3):
                if T[k, 0] * W[i, 0] + T[k, 1] * W[i, 1] - T[k, 2] > EPS:
                    return np.empty((0, 2))
        turn = (W[1, 0] - W[0, 0]) * (W[2, 1] - W[0, 1]) - (W[1, 1] - W[0, 1]) * (W[2, 0] - W[0, 0])
        if abs(turn) > 1e-6:
            if turn > 0:
                return W
            out = np.empty((3, 2))
            out[0] = W[0]
            out[1] = W[2]
            out[2] = W[1]
            return out
        return _hull(W, EPS)

    return _support_ihull(kind, cx, cy, sz, idx)


@njit(cache=True)
def _next_combination(c, n):
    k = c.shape[0]
    i = k - 1
    while i >= 0 and c[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for j in range(i + 1, k):
        c[j] = c[j - 1] + 1
    return True


@njit(cache=True)
def _all_triples(kind, cx, cy, sz):
    n = kind.shape[0]
    slot = np.full((n, n, n), -1, dtype=np.int64)
    polys = [np.empty((0, 2))]
    polys.pop()
    c = np.arange(3)
    while True:
        slot[c[0], c[1], c[2]] = len(polys)
        polys.append(_triple(kind, cx, cy, sz, c))
        if not _next_combination(c, n):
            break
    return slot, polys


@njit(cache=True)
def _subset_ihull(sub, slot, polys):
    m = sub.shape[0]
    total = 0
    c = np.arange(3)
    while True:
        total += polys[slot[sub[c[0]], sub[c[1]], sub[c[2]]]].shape[0]
        if not _next_combination(c, m):
            break
    if total == 0:
        return np.empty((0, 2))
    P = np.empty((total, 2))
    n = 0
    c = np.arange(3)
    while True:
        Q = polys[slot[sub[c[0]], sub[c[1]], sub[c[2]]]]
        P[n:n + Q.shape[0]] = Q
        n += Q.shape[0]
        if not _next_combination(c, m):
            break
    return _hull(P, EPS)


@njit(cache=True)
def cpih_region_arrays(kind, cx, cy, sz, k):
    """(vertices, subsets evaluated) of the CPIH region with subset size k."""
    n = kind.shape[0]
    slot, polys = _all_triples(kind, cx, cy, sz)
    c = np.arange(k)
    region = np.empty((0, 2))
    evaluated = 0
    while True:
        evaluated += 1
        h = _subset_ihull(c, slot, polys)
        region = h if evaluated == 1 else _intersect(region, h, EPS)
        if region.shape[0] == 0:
            break
        if not _next_combination(c, n):
            break
    return region, evaluated


@njit(cache=True)
def ihull_arrays(kind, cx, cy, sz):
    n = kind.shape[0]
    slot, polys = _all_triples(kind, cx, cy, sz)
    return _subset_ihull(np.arange(n), slot, polys)


def encode(regions):
    """Flat arrays for a sequence of ConvexRegion, or None if any is a polygon."""
    n = len(regions)
    kind = np.empty(n, dtype=np.int64)
    cx = np.empty(n)
    cy = np.empty(n)
    sz = np.empty(n)
    for i, r in enumerate(regions):
        code = KIND_CODES.get(r.kind)
        if code is None:
            return None
        kind[i] = code
        cx[i], cy[i] = r.center
        sz[i] = r.size
    return kind, cx, cy, sz
