"""Morphing attack synthesis: landmark interpolation, shared-topology
piecewise warps of both sources, pixel blending."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .geometry import TriangleMesh, delaunay
from .geometry.warp import warp_piecewise_float
from .image import quantize
from .landmarks import LandmarkSet, boundary_points, interpolate_landmarks


@dataclass(frozen=True)
class MorphParams:
    """Blend weight, geometry warp weight, and the pair's RNG seed."""

    blend: float = 0.5
    warp: float = 0.5
    seed: int = 0
    add_boundary: bool = True

    def __post_init__(self):
        if not 0.0 <= self.blend <= 1.0:
            raise ValueError(f"blend must be in [0, 1], got {self.blend}")
        if not 0.0 <= self.warp <= 1.0:
            raise ValueError(f"warp must be in [0, 1], got {self.warp}")


def sample_warp_factor(rng: np.random.Generator) -> float:
    """Uniform draw from [0, 1]; reproducible from the generator's seed."""
    return float(rng.random())


def derive_pair_seed(global_seed: int, pair_id: str) -> int:
    """Stable per-pair seed so batch morphing can run in any order."""
    digest = hashlib.sha256(f"{global_seed}:{pair_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def morph(
    img_a: np.ndarray,
    lm_a: LandmarkSet,
    img_b: np.ndarray,
    lm_b: LandmarkSet,
    params: MorphParams,
) -> tuple[np.ndarray, LandmarkSet]:
    """Morph two images into one attack sample.

    Target landmarks are the warp-weighted interpolation of the pair; a
    single Delaunay mesh is built on them (plus frame boundary points so the
    whole frame is covered) and both images are warped onto that geometry
    with triangle-correspondent affine maps. The outputs are mixed
    (1-blend)*A + blend*B and quantized to 8 bits.

    Returns the morphed image and the interpolated landmark set.
    """
    a = np.asarray(img_a)
    b = np.asarray(img_b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"image shapes differ: {a.shape} vs {b.shape}")
    if a.shape[:2] != (lm_a.height, lm_a.width) or b.shape[:2] != (lm_b.height, lm_b.width):
        raise DimensionMismatch("landmark dimensions do not match the images")

    target = interpolate_landmarks(lm_a, lm_b, params.warp)
    if params.add_boundary:
        frame = boundary_points(target.width, target.height)
        dst_pts = np.vstack([target.points, frame])
        src_a = np.vstack([lm_a.points, frame])
        src_b = np.vstack([lm_b.points, frame])
    else:
        dst_pts = target.points
        src_a = lm_a.points
        src_b = lm_b.points

    mesh = delaunay(dst_pts)
    warped_a = warp_piecewise_float(a, TriangleMesh(src_a, mesh.triangles), dst_pts)
    warped_b = warp_piecewise_float(b, TriangleMesh(src_b, mesh.triangles), dst_pts)
    blended = (1.0 - params.blend) * warped_a + params.blend * warped_b
    return quantize(blended), target
