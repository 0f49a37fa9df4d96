"""Hot per-pixel kernels: triangle rasterization and inverse-affine sampling.

Each kernel has a numba @njit scalar-loop version and a vectorized numpy
version. The two evaluate identical expressions in identical order, so for
the same inputs they yield bit-identical outputs (IEEE-754 arithmetic is
deterministic); tests assert this. Edge-inclusion uses a tiny absolute
tolerance so pixels sitting exactly on shared edges are claimed by the
lowest-index triangle rather than falling through a float-noise gap.
"""

from __future__ import annotations

import math

import numpy as np

from ..backend import use_numba

EDGE_TOL = 1e-9


def _rasterize_loops(xs, ys, tris, height, width, out_idx):
    for t in range(tris.shape[0]):
        ax = xs[tris[t, 0]]
        ay = ys[tris[t, 0]]
        bx = xs[tris[t, 1]]
        by = ys[tris[t, 1]]
        cx = xs[tris[t, 2]]
        cy = ys[tris[t, 2]]
        # orient CCW so the three edge functions are non-negative inside
        area2 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        if area2 < 0.0:
            bx, cx = cx, bx
            by, cy = cy, by
        xmin = int(math.floor(min(ax, bx, cx)))
        xmax = int(math.ceil(max(ax, bx, cx)))
        ymin = int(math.floor(min(ay, by, cy)))
        ymax = int(math.ceil(max(ay, by, cy)))
        if xmin < 0:
            xmin = 0
        if ymin < 0:
            ymin = 0
        if xmax > width - 1:
            xmax = width - 1
        if ymax > height - 1:
            ymax = height - 1
        for y in range(ymin, ymax + 1):
            py = float(y)
            for x in range(xmin, xmax + 1):
                if out_idx[y, x] >= 0:
                    continue
                px = float(x)
                e0 = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
                e1 = (cx - bx) * (py - by) - (cy - by) * (px - bx)
                e2 = (ax - cx) * (py - cy) - (ay - cy) * (px - cx)
                if e0 >= -EDGE_TOL and e1 >= -EDGE_TOL and e2 >= -EDGE_TOL:
                    out_idx[y, x] = t


def _rasterize_numpy(xs, ys, tris, height, width, out_idx):
    for t in range(tris.shape[0]):
        ax = xs[tris[t, 0]]
        ay = ys[tris[t, 0]]
        bx = xs[tris[t, 1]]
        by = ys[tris[t, 1]]
        cx = xs[tris[t, 2]]
        cy = ys[tris[t, 2]]
        area2 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        if area2 < 0.0:
            bx, cx = cx, bx
            by, cy = cy, by
        xmin = max(int(math.floor(min(ax, bx, cx))), 0)
        xmax = min(int(math.ceil(max(ax, bx, cx))), width - 1)
        ymin = max(int(math.floor(min(ay, by, cy))), 0)
        ymax = min(int(math.ceil(max(ay, by, cy))), height - 1)
        if xmin > xmax or ymin > ymax:
            continue
        py = np.arange(ymin, ymax + 1, dtype=np.float64)[:, None]
        px = np.arange(xmin, xmax + 1, dtype=np.float64)[None, :]
        e0 = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        e1 = (cx - bx) * (py - by) - (cy - by) * (px - bx)
        e2 = (ax - cx) * (py - cy) - (ay - cy) * (px - cx)
        window = out_idx[ymin : ymax + 1, xmin : xmax + 1]
        inside = (e0 >= -EDGE_TOL) & (e1 >= -EDGE_TOL) & (e2 >= -EDGE_TOL) & (window < 0)
        window[inside] = t


def _sample_loops(image, tri_idx, affines, out):
    height = image.shape[0]
    width = image.shape[1]
    channels = image.shape[2]
    for y in range(height):
        for x in range(width):
            t = tri_idx[y, x]
            if t < 0:
                for c in range(channels):
                    out[y, x, c] = image[y, x, c]
                continue
            sx = affines[t, 0] * x + affines[t, 1] * y + affines[t, 2]
            sy = affines[t, 3] * x + affines[t, 4] * y + affines[t, 5]
            fx0 = math.floor(sx)
            fy0 = math.floor(sy)
            wx = sx - fx0
            wy = sy - fy0
            x0 = int(fx0)
            y0 = int(fy0)
            x0c = min(max(x0, 0), width - 1)
            x1c = min(max(x0 + 1, 0), width - 1)
            y0c = min(max(y0, 0), height - 1)
            y1c = min(max(y0 + 1, 0), height - 1)
            for c in range(channels):
                top = (1.0 - wx) * image[y0c, x0c, c] + wx * image[y0c, x1c, c]
                bot = (1.0 - wx) * image[y1c, x0c, c] + wx * image[y1c, x1c, c]
                out[y, x, c] = (1.0 - wy) * top + wy * bot


def _sample_numpy(image, tri_idx, affines, out):
    height, width, _ = image.shape
    inside = tri_idx >= 0
    safe_t = np.where(inside, tri_idx, 0)
    px = np.arange(width, dtype=np.float64)[None, :]
    py = np.arange(height, dtype=np.float64)[:, None]
    aff = affines[safe_t]  # (H, W, 6)
    sx = aff[..., 0] * px + aff[..., 1] * py + aff[..., 2]
    sy = aff[..., 3] * px + aff[..., 4] * py + aff[..., 5]
    fx0 = np.floor(sx)
    fy0 = np.floor(sy)
    wx = sx - fx0
    wy = sy - fy0
    x0 = fx0.astype(np.int64)
    y0 = fy0.astype(np.int64)
    x0c = np.clip(x0, 0, width - 1)
    x1c = np.clip(x0 + 1, 0, width - 1)
    y0c = np.clip(y0, 0, height - 1)
    y1c = np.clip(y0 + 1, 0, height - 1)
    wx = wx[..., None]
    wy = wy[..., None]
    top = (1.0 - wx) * image[y0c, x0c] + wx * image[y0c, x1c]
    bot = (1.0 - wx) * image[y1c, x0c] + wx * image[y1c, x1c]
    values = (1.0 - wy) * top + wy * bot
    out[...] = np.where(inside[..., None], values, image)


_jitted = {}


def _jit(fn):
    cached = _jitted.get(fn.__name__)
    if cached is None:
        from numba import njit

        cached = njit(cache=True, nogil=True)(fn)
        _jitted[fn.__name__] = cached
    return cached


def rasterize(dst_points: np.ndarray, triangles: np.ndarray, height: int, width: int) -> np.ndarray:
    """Assign each pixel center the index of the first triangle containing it.

    Pixels outside every triangle get -1. Triangle order resolves overlap on
    shared edges (lowest index wins), which keeps the result independent of
    any internal parallelization.
    """
    xs = np.ascontiguousarray(dst_points[:, 0], dtype=np.float64)
    ys = np.ascontiguousarray(dst_points[:, 1], dtype=np.float64)
    tris = np.ascontiguousarray(triangles, dtype=np.int64)
    out_idx = np.full((height, width), -1, dtype=np.int32)
    if use_numba():
        _jit(_rasterize_loops)(xs, ys, tris, height, width, out_idx)
    else:
        _rasterize_numpy(xs, ys, tris, height, width, out_idx)
    return out_idx


def sample(image: np.ndarray, tri_idx: np.ndarray, affines: np.ndarray) -> np.ndarray:
    """Inverse-map pixels through per-triangle affines with bilinear sampling.

    ``image`` is float64 (H, W, C); ``affines[t]`` holds the destination-to-
    source transform rows (a, b, c, d, e, f). Source reads clamp to the edge.
    Pixels with tri_idx < 0 copy the input.
    """
    img = np.ascontiguousarray(image, dtype=np.float64)
    aff = np.ascontiguousarray(affines, dtype=np.float64)
    out = np.empty_like(img)
    if use_numba():
        _jit(_sample_loops)(img, tri_idx, aff, out)
    else:
        _sample_numpy(img, tri_idx, aff, out)
    return out
