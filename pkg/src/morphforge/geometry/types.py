"""Geometric value types.

Points are rows of float64 arrays of shape (n, 2), column order (x, y) in
pixel units. Triangles are int32 index triples into a point array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateTriangle

AREA_EPS = 1e-9  # px^2, below this a triangle counts as degenerate
DET_EPS = 1e-12  # |det| floor for an invertible linear part
DUP_EPS = 1e-6  # px, minimum pairwise point separation
CIRC_EPS = 1e-9  # tolerance of the in-circumcircle predicate (normalized coords)


def as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected (n, 2) point array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points contain NaN or infinity")
    return pts


def signed_area(a, b, c) -> float:
    """Signed area of triangle abc; positive for CCW order in (x, y) algebra."""
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


@dataclass(frozen=True)
class TriangleMesh:
    """A triangulation: point array plus index triples.

    ``delaunay`` produces meshes whose triangles satisfy the empty-
    circumcircle property; the container itself only guarantees index
    validity and non-degenerate triangles.
    """

    points: np.ndarray
    triangles: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "points", as_points(self.points))
        tris = np.asarray(self.triangles, dtype=np.int32)
        if tris.ndim != 2 or tris.shape[1] != 3:
            raise ValueError(f"expected (m, 3) triangle array, got shape {tris.shape}")
        n = len(self.points)
        if tris.size and (tris.min() < 0 or tris.max() >= n):
            raise ValueError("triangle index out of range")
        object.__setattr__(self, "triangles", tris)

    def with_points(self, points) -> "TriangleMesh":
        """Same topology over a different point set (index-correspondent)."""
        pts = as_points(points)
        if len(pts) != len(self.points):
            raise ValueError(
                f"point count {len(pts)} does not match mesh point count {len(self.points)}"
            )
        return TriangleMesh(pts, self.triangles)

    def triangle_areas(self) -> np.ndarray:
        p = self.points
        t = self.triangles
        a, b, c = p[t[:, 0]], p[t[:, 1]], p[t[:, 2]]
        return 0.5 * np.abs(
            (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
            - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
        )


@dataclass(frozen=True)
class AffineTransform2:
    """2x3 affine map: linear part in columns 0-1, translation in column 2."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.shape != (2, 3):
            raise ValueError(f"expected (2, 3) matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("affine matrix contains NaN or infinity")
        object.__setattr__(self, "matrix", m)

    @property
    def det(self) -> float:
        m = self.matrix
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])

    def apply(self, points) -> np.ndarray:
        pts = as_points(points)
        return pts @ self.matrix[:, :2].T + self.matrix[:, 2]

    def flat(self) -> np.ndarray:
        """Row-major 6-vector (a, b, c, d, e, f) for the sampling kernel."""
        return self.matrix.reshape(-1)


def affine_from_triangles(src, dst) -> AffineTransform2:
    """Affine transform mapping a source vertex triple onto a destination triple.

    Solved in closed form (Cramer on the edge vectors), exact to a few ulp;
    the three vertices round-trip within 1e-9 px for any non-degenerate pair.
    """
    s = as_points(src)
    d = as_points(dst)
    if s.shape != (3, 2) or d.shape != (3, 2):
        raise ValueError("affine_from_triangles expects two (3, 2) vertex triples")
    u1x, u1y = s[1, 0] - s[0, 0], s[1, 1] - s[0, 1]
    u2x, u2y = s[2, 0] - s[0, 0], s[2, 1] - s[0, 1]
    det = u1x * u2y - u2x * u1y
    if abs(det) <= 2.0 * AREA_EPS:
        raise DegenerateTriangle(f"source triangle is (near-)collinear, 2*area={det:.3e}")
    v1x, v1y = d[1, 0] - d[0, 0], d[1, 1] - d[0, 1]
    v2x, v2y = d[2, 0] - d[0, 0], d[2, 1] - d[0, 1]
    dest_det = v1x * v2y - v2x * v1y
    if abs(dest_det) <= 2.0 * AREA_EPS:
        raise DegenerateTriangle(f"destination triangle is (near-)collinear, 2*area={dest_det:.3e}")
    # linear part L = [v1 v2] @ inv([u1 u2])
    a = (v1x * u2y - v2x * u1y) / det
    b = (v2x * u1x - v1x * u2x) / det
    c = (v1y * u2y - v2y * u1y) / det
    e = (v2y * u1x - v1y * u2x) / det
    tx = d[0, 0] - (a * s[0, 0] + b * s[0, 1])
    ty = d[0, 1] - (c * s[0, 0] + e * s[0, 1])
    return AffineTransform2(np.array([[a, b, tx], [c, e, ty]]))
