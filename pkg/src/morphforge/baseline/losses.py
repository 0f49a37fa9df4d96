"""Cross-entropy losses for the pixel-wise-supervised linear detector."""

from __future__ import annotations

import numpy as np

from ..errors import ShapeMismatch

PROB_EPS = 1e-7


def clamp_probability(p):
    return np.clip(p, PROB_EPS, 1.0 - PROB_EPS)


def bce(prediction: float, label: float) -> float:
    """Binary cross-entropy -(y ln p + (1-y) ln(1-p)), prediction clamped."""
    p = clamp_probability(np.asarray(prediction, dtype=np.float64))
    y = np.asarray(label, dtype=np.float64)
    return float(np.mean(-(y * np.log(p) + (1.0 - y) * np.log(1.0 - p))))


def pw_loss(map_pred, map_label, bin_pred: float, bin_label: float) -> float:
    """Mean BCE over the label map plus BCE of the binary output."""
    mp = np.asarray(map_pred, dtype=np.float64)
    ml = np.asarray(map_label, dtype=np.float64)
    if mp.shape != ml.shape:
        raise ShapeMismatch(f"map shapes differ: {mp.shape} vs {ml.shape}")
    return bce(mp, ml) + bce(bin_pred, bin_label)


def sigmoid(z):
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def batch_loss_and_grads(
    weights: np.ndarray,
    bias: float,
    map_head: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
):
    """Mean pixel-wise loss over a batch and its analytic parameter gradients.

    x is (N, d) standardized features, y is (N,) binary labels; the map label
    of a sample is its binary label broadcast over all grid cells. Gradients
    use d BCE(sigmoid(z), y) / dz = sigmoid(z) - y; the probability clamp only
    guards the logs and is inactive anywhere the gradient check runs.
    """
    n, d = x.shape
    cells = map_head.shape[0]
    z_bin = x @ weights + bias  # (N,)
    p_bin = sigmoid(z_bin)
    z_map = x @ map_head.T  # (N, cells)
    p_map = sigmoid(z_map)

    y_col = y[:, None]
    loss_bin = bce(p_bin, y)
    loss_map = bce(p_map, np.broadcast_to(y_col, p_map.shape))
    loss = loss_map + loss_bin

    err_bin = (p_bin - y) / n  # (N,)
    grad_w = x.T @ err_bin
    grad_b = float(err_bin.sum())
    err_map = (p_map - y_col) / (n * cells)  # (N, cells)
    grad_map = err_map.T @ x  # (cells, d)
    return loss, grad_w, grad_b, grad_map
