"""Piecewise-affine image warping over a triangle mesh."""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateTriangle, MeshMismatch
from . import _kernels
from .types import AREA_EPS, TriangleMesh, affine_from_triangles, as_points


def _as_hwc(image: np.ndarray) -> tuple[np.ndarray, bool]:
    img = np.asarray(image)
    if img.ndim == 2:
        return img[:, :, None], True
    if img.ndim == 3 and img.shape[2] in (1, 3):
        return img, False
    raise ValueError(f"expected (H, W) or (H, W, 1|3) image, got shape {img.shape}")


def inverse_affines(src_points: np.ndarray, dst_points: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    """Per-triangle destination-to-source transforms as a (T, 6) row-major array."""
    affines = np.empty((len(triangles), 6), dtype=np.float64)
    for t, (i, j, k) in enumerate(triangles):
        dst_tri = dst_points[[i, j, k]]
        src_tri = src_points[[i, j, k]]
        area2 = (dst_tri[1, 0] - dst_tri[0, 0]) * (dst_tri[2, 1] - dst_tri[0, 1]) - (
            dst_tri[1, 1] - dst_tri[0, 1]
        ) * (dst_tri[2, 0] - dst_tri[0, 0])
        if abs(area2) <= 2.0 * AREA_EPS:
            raise DegenerateTriangle(f"destination triangle {t} is degenerate, 2*area={area2:.3e}")
        affines[t] = affine_from_triangles(dst_tri, src_tri).flat()
    return affines


def warp_piecewise_float(image, src_mesh: TriangleMesh, dst_points) -> np.ndarray:
    """Warp with float64 output, no quantization; see warp_piecewise."""
    img, squeeze = _as_hwc(image)
    if img.size == 0:
        raise ValueError("image is empty")
    dst = as_points(dst_points)
    if len(dst) != len(src_mesh.points):
        raise MeshMismatch(
            f"{len(dst)} destination points for a mesh with {len(src_mesh.points)} points"
        )
    height, width = img.shape[:2]
    affines = inverse_affines(src_mesh.points, dst, src_mesh.triangles)
    tri_idx = _kernels.rasterize(dst, src_mesh.triangles, height, width)
    out = _kernels.sample(img.astype(np.float64), tri_idx, affines)
    return out[:, :, 0] if squeeze else out


def warp_piecewise(image, src_mesh: TriangleMesh, dst_points) -> np.ndarray:
    """Piecewise-affine warp of an 8-bit image.

    Every pixel center inside some destination triangle is inverse-mapped by
    that triangle's affine transform and bilinearly sampled from the source
    (clamped at the borders); pixels outside all triangles copy the input.
    Output has the input's shape and dtype uint8 (round half away from zero).
    """
    out = warp_piecewise_float(image, src_mesh, dst_points)
    return np.clip(np.floor(out + 0.5), 0.0, 255.0).astype(np.uint8)
