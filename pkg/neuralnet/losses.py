"""
Training objectives: mean absolute error and binary log loss.
"""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np

from config.errors import DataValidationError
from neuralnet.config import LossKind

LOG_LOSS_CLAMP = 1e-7


def _as_pair(predictions: Sequence[float], targets: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    p = np.asarray(predictions, dtype=float).reshape(-1)
    t = np.asarray(targets, dtype=float).reshape(-1)
    if p.size == 0:
        raise DataValidationError("Loss of an empty batch is undefined")
    if p.shape != t.shape:
        raise DataValidationError(f"{p.size} predictions but {t.size} targets")
    return p, t


def _check_log_targets(t: np.ndarray) -> None:
    # Soft targets in [0, 1] are allowed; scaled prices train the original preset.
    if np.any((t < 0.0) | (t > 1.0)):
        raise DataValidationError("LogLoss targets must lie in [0, 1]")


def loss(kind: LossKind, predictions: Sequence[float], targets: Sequence[float]) -> float:
    """
    MAE = mean |p - t|.
    LogLoss = mean -[t ln p + (1 - t) ln(1 - p)] with p clamped to [1e-7, 1 - 1e-7].
    """
    kind = LossKind(kind)
    p, t = _as_pair(predictions, targets)
    if kind is LossKind.MAE:
        return float(np.mean(np.abs(p - t)))
    _check_log_targets(t)
    clamped = np.clip(p, LOG_LOSS_CLAMP, 1.0 - LOG_LOSS_CLAMP)
    return float(np.mean(-(t * np.log(clamped) + (1.0 - t) * np.log(1.0 - clamped))))


def loss_gradient(kind: LossKind, predictions: Sequence[float], targets: Sequence[float]) -> np.ndarray:
    """d loss / d prediction for every sample; the clamp's flat regions give 0."""
    kind = LossKind(kind)
    p, t = _as_pair(predictions, targets)
    n = p.size
    if kind is LossKind.MAE:
        return np.sign(p - t) / n
    _check_log_targets(t)
    inside = (p > LOG_LOSS_CLAMP) & (p < 1.0 - LOG_LOSS_CLAMP)
    clamped = np.clip(p, LOG_LOSS_CLAMP, 1.0 - LOG_LOSS_CLAMP)
    grad = (-t / clamped + (1.0 - t) / (1.0 - clamped)) / n
    return np.where(inside, grad, 0.0)
