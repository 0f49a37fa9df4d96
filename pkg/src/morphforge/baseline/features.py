"""Hand-crafted residual features: per-block statistics of the Laplacian."""

from __future__ import annotations

import hashlib
import json

import numpy as np

from ..image import luma

FEATURE_GRID = 8  # 8x8 blocks, mean + variance each -> 128 values
FEATURE_DIM = 2 * FEATURE_GRID * FEATURE_GRID


def laplacian_residual(image: np.ndarray) -> np.ndarray:
    """4-neighbor Laplacian of the luma plane, edge-replicated borders."""
    gray = luma(np.asarray(image))
    padded = np.pad(gray, 1, mode="edge")
    return (
        padded[:-2, 1:-1]
        + padded[2:, 1:-1]
        + padded[1:-1, :-2]
        + padded[1:-1, 2:]
        - 4.0 * padded[1:-1, 1:-1]
    )


def extract_features(image: np.ndarray, grid: int = FEATURE_GRID) -> np.ndarray:
    """Per-block mean and variance of the high-frequency residual.

    Blocks tile the image in a grid x grid layout; the output interleaves
    (mean, variance) per block in row-major block order.
    """
    residual = laplacian_residual(image)
    h, w = residual.shape
    if h < grid or w < grid:
        raise ValueError(f"image {h}x{w} smaller than the {grid}x{grid} block grid")
    row_edges = np.linspace(0, h, grid + 1).astype(int)
    col_edges = np.linspace(0, w, grid + 1).astype(int)
    out = np.empty(2 * grid * grid, dtype=np.float64)
    i = 0
    for r in range(grid):
        for c in range(grid):
            block = residual[row_edges[r] : row_edges[r + 1], col_edges[c] : col_edges[c + 1]]
            out[i] = block.mean()
            out[i + 1] = block.var()
            i += 2
    return out


def feature_config_hash(grid: int = FEATURE_GRID) -> str:
    """Fingerprint of the feature definition, stored with trained models so a
    model is never scored on features it was not built for."""
    config = {
        "kernel": "laplacian-4",
        "plane": "luma-rec601",
        "grid": grid,
        "stats": ["mean", "var"],
        "border": "edge",
    }
    return hashlib.sha256(json.dumps(config, sort_keys=True).encode()).hexdigest()[:16]
