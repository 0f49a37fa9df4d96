"""Training loop: full-batch Adam on the combined pixel-wise + binary loss,
early stopping on a held-out validation split."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import SingleClassTrainingSet
from .losses import batch_loss_and_grads
from .model import MAP_GRID, LinearModel

log = logging.getLogger("morphforge.baseline")


@dataclass(frozen=True)
class TrainConfig:
    lr: float = 1e-4
    epochs: int = 300
    patience: int = 20
    weight_decay: float = 1e-5
    val_fraction: float = 0.2
    seed: int = 0
    map_grid: tuple[int, int] = MAP_GRID
    binary_head: str = "sigmoid"


@dataclass
class TrainHistory:
    train_loss: list[float]
    val_loss: list[float]
    best_epoch: int

    @property
    def epochs_run(self) -> int:
        return len(self.train_loss)


class _Adam:
    def __init__(self, shape, lr, beta1=0.9, beta2=0.999, eps=1e-8):
        self.m = np.zeros(shape)
        self.v = np.zeros(shape)
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0

    def step(self, param, grad):
        self.t += 1
        self.m = self.beta1 * self.m + (1.0 - self.beta1) * grad
        self.v = self.beta2 * self.v + (1.0 - self.beta2) * grad * grad
        m_hat = self.m / (1.0 - self.beta1**self.t)
        v_hat = self.v / (1.0 - self.beta2**self.t)
        return param - self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


def _stratified_split(y: np.ndarray, fraction: float, rng: np.random.Generator):
    """Per-class shuffled split keeping at least one sample of each class on
    each side when the class has two or more samples."""
    val_idx = []
    for label in (0, 1):
        idx = np.flatnonzero(y == label)
        idx = idx[rng.permutation(len(idx))]
        n_val = int(round(fraction * len(idx)))
        if len(idx) >= 2:
            n_val = min(max(n_val, 1), len(idx) - 1)
        else:
            n_val = 0
        val_idx.extend(idx[:n_val].tolist())
    val_mask = np.zeros(len(y), dtype=bool)
    val_mask[val_idx] = True
    return ~val_mask, val_mask


def train(features: np.ndarray, labels: np.ndarray, config: TrainConfig = TrainConfig()) -> tuple[LinearModel, TrainHistory]:
    """Fit the linear detector.

    Runs Adam on the combined loss until `epochs` or until the validation
    loss has gone `patience` consecutive epochs without improving, and
    returns the parameters of the best validation epoch.
    """
    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64).reshape(-1)
    if x.ndim != 2 or len(x) != len(y):
        raise ValueError("features must be (N, d) with one label per row")
    classes = np.unique(y)
    if not np.array_equal(classes, [0.0, 1.0]):
        raise SingleClassTrainingSet(f"need both classes, got labels {classes}")

    mean = x.mean(axis=0)
    std = x.std(axis=0)
    std[std < 1e-12] = 1.0
    xs = (x - mean) / std

    rng = np.random.default_rng(config.seed)
    train_mask, val_mask = _stratified_split(y.astype(int), config.val_fraction, rng)
    x_train, y_train = xs[train_mask], y[train_mask]
    x_val, y_val = xs[val_mask], y[val_mask]
    if len(x_val) == 0:  # degenerate tiny sets: validate on the training data
        x_val, y_val = x_train, y_train

    d = x.shape[1]
    cells = config.map_grid[0] * config.map_grid[1]
    scale = 1.0 / np.sqrt(d)
    weights = rng.normal(0.0, scale, d)
    bias = 0.0
    map_head = rng.normal(0.0, scale, (cells, d))

    opt_w = _Adam(weights.shape, config.lr)
    opt_b = _Adam((), config.lr)
    opt_m = _Adam(map_head.shape, config.lr)

    best = (np.inf, weights.copy(), bias, map_head.copy(), 0)
    wait = 0
    history = TrainHistory([], [], 0)
    for epoch in range(1, config.epochs + 1):
        loss, grad_w, grad_b, grad_m = batch_loss_and_grads(weights, bias, map_head, x_train, y_train)
        grad_w = grad_w + config.weight_decay * weights
        grad_m = grad_m + config.weight_decay * map_head
        weights = opt_w.step(weights, grad_w)
        bias = float(opt_b.step(bias, grad_b))
        map_head = opt_m.step(map_head, grad_m)

        val_loss, _, _, _ = batch_loss_and_grads(weights, bias, map_head, x_val, y_val)
        history.train_loss.append(float(loss))
        history.val_loss.append(float(val_loss))
        if val_loss < best[0]:
            best = (val_loss, weights.copy(), bias, map_head.copy(), epoch)
            wait = 0
        else:
            wait += 1
        if wait >= config.patience:
            log.info("early stop at epoch %d (best %d)", epoch, best[4])
            break

    history.best_epoch = best[4]
    model = LinearModel(
        weights=best[1],
        bias=best[2],
        map_head=best[3],
        feature_mean=mean,
        feature_std=std,
        map_grid=config.map_grid,
        binary_head=config.binary_head,
    )
    return model, history
