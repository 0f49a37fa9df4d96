"""Desk-scale reference detector: residual features, linear model,
pixel-wise + binary cross-entropy training."""

from .features import FEATURE_DIM, FEATURE_GRID, extract_features, feature_config_hash
from .losses import batch_loss_and_grads, bce, pw_loss, sigmoid
from .model import MAP_GRID, LinearModel, load_model, save_model, score
from .train import TrainConfig, TrainHistory, train

__all__ = [
    "FEATURE_DIM",
    "FEATURE_GRID",
    "MAP_GRID",
    "LinearModel",
    "TrainConfig",
    "TrainHistory",
    "batch_loss_and_grads",
    "bce",
    "extract_features",
    "feature_config_hash",
    "load_model",
    "pw_loss",
    "save_model",
    "score",
    "sigmoid",
    "train",
]
