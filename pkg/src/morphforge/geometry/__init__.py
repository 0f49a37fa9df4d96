"""Exact 2-D computational geometry: Delaunay triangulation, affine
transform estimation, piecewise-affine warping."""

from .delaunay import delaunay
from .types import (
    AREA_EPS,
    CIRC_EPS,
    DET_EPS,
    DUP_EPS,
    AffineTransform2,
    TriangleMesh,
    affine_from_triangles,
    as_points,
    signed_area,
)
from .warp import warp_piecewise, warp_piecewise_float

__all__ = [
    "AREA_EPS",
    "CIRC_EPS",
    "DET_EPS",
    "DUP_EPS",
    "AffineTransform2",
    "TriangleMesh",
    "affine_from_triangles",
    "as_points",
    "delaunay",
    "signed_area",
    "warp_piecewise",
    "warp_piecewise_float",
]
