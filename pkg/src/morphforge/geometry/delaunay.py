"""Delaunay triangulation via Bowyer-Watson incremental insertion.

Points are normalized into the unit box and wrapped in a very large super
triangle; after insertion the super-adjacent faces are dropped and a Lawson
flip pass repairs any residual non-Delaunay edge and canonicalizes cocircular
quads (prefer the diagonal incident to the lowest point index), making the
output a pure function of the input point order.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateInput
from .types import AREA_EPS, CIRC_EPS, DUP_EPS, TriangleMesh, as_points

_SUPER_SCALE = 1.0e9


def _orient(ax, ay, bx, by, cx, cy) -> float:
    """Twice the signed area of (a, b, c); positive for CCW."""
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _incircle(ax, ay, bx, by, cx, cy, px, py) -> tuple[float, float]:
    """In-circumcircle determinant for CCW (a, b, c) plus its term-magnitude
    sum; det positive iff p is strictly inside. det/perm gives a scale-free
    measure so ties can be detected relative to float precision."""
    adx = ax - px
    ady = ay - py
    bdx = bx - px
    bdy = by - py
    cdx = cx - px
    cdy = cy - py
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    det = adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx)
    perm = (
        abs(adx) * (abs(bdy * cd) + abs(bd * cdy))
        + abs(ady) * (abs(bdx * cd) + abs(bd * cdx))
        + ad * (abs(bdx * cdy) + abs(bdy * cdx))
    )
    return det, perm


def _validate(pts: np.ndarray) -> None:
    n = len(pts)
    if n < 3:
        raise DegenerateInput(f"need at least 3 points, got {n}")
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    ordered = pts[order]
    for i in range(n):
        xi, yi = ordered[i]
        j = i + 1
        while j < n and ordered[j, 0] - xi <= DUP_EPS:
            if abs(ordered[j, 1] - yi) <= DUP_EPS:
                dx = ordered[j, 0] - xi
                dy = ordered[j, 1] - yi
                if dx * dx + dy * dy <= DUP_EPS * DUP_EPS:
                    raise DegenerateInput(
                        f"points {order[i]} and {order[j]} closer than {DUP_EPS} px"
                    )
            j += 1
    # collinearity: every point on the line through the two most separated
    # lexicographic extremes means no triangle exists
    a = ordered[0]
    b = ordered[-1]
    span = np.hypot(*(b - a))
    if span <= DUP_EPS:
        raise DegenerateInput("point set has no spatial extent")
    cross = np.abs(
        (b[0] - a[0]) * (pts[:, 1] - a[1]) - (b[1] - a[1]) * (pts[:, 0] - a[0])
    )
    if np.max(cross) / span <= DUP_EPS:
        raise DegenerateInput("all points are collinear")


def _canonical_rotation(tri: tuple[int, int, int]) -> tuple[int, int, int]:
    """Rotate the triple so the smallest index leads (orientation preserved)."""
    i, j, k = tri
    if i <= j and i <= k:
        return (i, j, k)
    if j <= i and j <= k:
        return (j, k, i)
    return (k, i, j)


def _bad_triangles(xs, ys, tri_arr, px, py) -> np.ndarray:
    """Vectorized in-circumcircle test of one point against every triangle."""
    ax, ay = xs[tri_arr[:, 0]], ys[tri_arr[:, 0]]
    bx, by = xs[tri_arr[:, 1]], ys[tri_arr[:, 1]]
    cx, cy = xs[tri_arr[:, 2]], ys[tri_arr[:, 2]]
    adx, ady = ax - px, ay - py
    bdx, bdy = bx - px, by - py
    cdx, cdy = cx - px, cy - py
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    det = adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx)
    return np.flatnonzero(det > 0.0)


def _bowyer_watson(q: np.ndarray) -> list[tuple[int, int, int]]:
    n = len(q)
    xs = np.concatenate([q[:, 0], [-_SUPER_SCALE, _SUPER_SCALE, 0.0]])
    ys = np.concatenate([q[:, 1], [-_SUPER_SCALE, -_SUPER_SCALE, _SUPER_SCALE]])
    triangles: list[tuple[int, int, int]] = [(n, n + 1, n + 2)]
    for p in range(n):
        px, py = xs[p], ys[p]
        tri_arr = np.array(triangles, dtype=np.int64)
        bad = _bad_triangles(xs, ys, tri_arr, px, py).tolist()
        # cavity boundary: edges used by exactly one bad triangle
        edge_count: dict[tuple[int, int], tuple[int, int]] = {}
        for ti in bad:
            a, b, c = triangles[ti]
            for u, v in ((a, b), (b, c), (c, a)):
                key = (u, v) if u < v else (v, u)
                if key in edge_count:
                    del edge_count[key]
                else:
                    edge_count[key] = (u, v)
        for ti in reversed(bad):
            del triangles[ti]
        for u, v in edge_count.values():
            # keep the new triangle CCW
            if _orient(xs[u], ys[u], xs[v], ys[v], px, py) > 0.0:
                triangles.append((u, v, p))
            else:
                triangles.append((v, u, p))
    return [t for t in triangles if t[0] < n and t[1] < n and t[2] < n]


def _lawson_pass(q: np.ndarray, triangles: list[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    """Flip to fix residual non-Delaunay edges; break cocircular ties by
    preferring the diagonal incident to the lowest point index."""
    tris = [_canonical_rotation(t) for t in triangles]
    max_rounds = 4 * len(tris) * len(tris) + 16
    rounds = 0
    changed = True
    while changed and rounds < max_rounds:
        changed = False
        rounds += 1
        edge_map: dict[tuple[int, int], list[int]] = {}
        for ti, (a, b, c) in enumerate(tris):
            for u, v in ((a, b), (b, c), (c, a)):
                key = (u, v) if u < v else (v, u)
                edge_map.setdefault(key, []).append(ti)
        for key in sorted(edge_map):
            owners = edge_map[key]
            if len(owners) != 2:
                continue
            t1, t2 = owners
            a1 = [v for v in tris[t1] if v not in key]
            a2 = [v for v in tris[t2] if v not in key]
            if len(a1) != 1 or len(a2) != 1:
                continue
            opp1, opp2 = a1[0], a2[0]
            u, v = key
            ax, ay = q[u]
            bx, by = q[v]
            c1x, c1y = q[opp1]
            c2x, c2y = q[opp2]
            if _orient(ax, ay, bx, by, c1x, c1y) > 0.0:
                det, perm = _incircle(ax, ay, bx, by, c1x, c1y, c2x, c2y)
            else:
                det, perm = _incircle(ax, ay, c1x, c1y, bx, by, c2x, c2y)
            tie_band = CIRC_EPS * perm
            flip = False
            if det > tie_band:
                flip = True
            elif abs(det) <= tie_band:
                lowest = min(u, v, opp1, opp2)
                flip = lowest not in key and _convex_quad(q, u, v, opp1, opp2)
            if flip and _convex_quad(q, u, v, opp1, opp2):
                tris[t1] = _canonical_rotation(_oriented(q, opp1, opp2, u))
                tris[t2] = _canonical_rotation(_oriented(q, opp1, opp2, v))
                changed = True
                break
    return tris


def _oriented(q: np.ndarray, i: int, j: int, k: int) -> tuple[int, int, int]:
    if _orient(q[i, 0], q[i, 1], q[j, 0], q[j, 1], q[k, 0], q[k, 1]) > 0.0:
        return (i, j, k)
    return (i, k, j)


def _convex_quad(q: np.ndarray, u: int, v: int, opp1: int, opp2: int) -> bool:
    """The quad (opp1, u, opp2, v) admits the (opp1, opp2) diagonal iff u and v
    lie strictly on opposite sides of it."""
    s1 = _orient(q[opp1, 0], q[opp1, 1], q[opp2, 0], q[opp2, 1], q[u, 0], q[u, 1])
    s2 = _orient(q[opp1, 0], q[opp1, 1], q[opp2, 0], q[opp2, 1], q[v, 0], q[v, 1])
    return (s1 > 0.0 > s2) or (s2 > 0.0 > s1)


def delaunay(points) -> TriangleMesh:
    """Delaunay-triangulate a 2-D point set.

    Raises DegenerateInput for fewer than 3 points, duplicate points (within
    DUP_EPS) or a fully collinear set. Output triangle order is deterministic
    given the input point order: triangles are CCW with the lowest index
    first, sorted lexicographically.
    """
    pts = as_points(points)
    _validate(pts)
    center = pts.mean(axis=0)
    scale = max(float(np.ptp(pts[:, 0])), float(np.ptp(pts[:, 1])), DUP_EPS)
    q = (pts - center) / scale
    tris = _bowyer_watson(q)
    # exactly-collinear triples can leave zero-area slivers; drop them
    tris = [
        t
        for t in tris
        if abs(_orient(q[t[0], 0], q[t[0], 1], q[t[1], 0], q[t[1], 1], q[t[2], 0], q[t[2], 1]))
        > 2.0 * AREA_EPS / (scale * scale)
    ]
    tris = _lawson_pass(q, tris)
    tris.sort()
    return TriangleMesh(pts, np.array(tris, dtype=np.int32).reshape(-1, 3))
