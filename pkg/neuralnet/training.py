"""
Mini-batch training with Adam, prediction and training-history files.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from config.errors import DataValidationError, DivergenceError
from config.settings import settings
from neuralnet.adam import AdamState, adam_step
from neuralnet.config import LossKind, MlpConfig
from neuralnet.losses import loss
from neuralnet.model import Mode, MlpModel, backward, forward, init_model, rng_streams
from preprocess.matrix import FeatureMatrix
from preprocess.splitting import SplitIndices

logger = logging.getLogger(__name__)

HISTORY_COLUMNS = ("epoch", "train_loss", "val_loss")


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    val_loss: float


def _check_inputs(name: str, x: np.ndarray, y: np.ndarray, config: MlpConfig) -> None:
    if x.ndim != 2 or x.shape[1] != config.input_dim:
        raise DataValidationError(f"{name} rows have shape {x.shape}, the network expects {config.input_dim} columns")
    if len(x) != len(y):
        raise DataValidationError(f"{name} has {len(x)} rows but {len(y)} targets")
    if len(x) == 0:
        raise DataValidationError(f"{name} set is empty")


def _clip_soft_targets(name: str, y: np.ndarray) -> np.ndarray:
    outside = int(np.count_nonzero((y < 0.0) | (y > 1.0)))
    if outside:
        logger.warning("%s: %d LogLoss targets outside [0, 1] clipped", name, outside)
    return np.clip(y, 0.0, 1.0)


def train_arrays(
    x_train: np.ndarray,
    y_train: np.ndarray,
    x_val: np.ndarray,
    y_val: np.ndarray,
    config: MlpConfig,
    show_progress: Optional[bool] = None,
    log_callback: Optional[Callable[[str], None]] = None,
) -> Tuple[MlpModel, List[EpochRecord]]:
    """
    Train a fresh network on plain arrays.

    Each epoch reshuffles the training rows with the seeded shuffle stream and
    walks them in batches of ``batch_size`` (the last, smaller batch included).
    The epoch's train loss is the sample-weighted mean of its batch losses;
    the validation loss is measured in infer mode afterwards.

    Raises:
        DivergenceError: a loss or parameter became non-finite.
    """
    x_train = np.asarray(x_train, dtype=float)
    y_train = np.asarray(y_train, dtype=float).reshape(-1)
    x_val = np.asarray(x_val, dtype=float)
    y_val = np.asarray(y_val, dtype=float).reshape(-1)
    _check_inputs("Training", x_train, y_train, config)
    _check_inputs("Validation", x_val, y_val, config)
    if config.loss is LossKind.LOG_LOSS:
        y_train = _clip_soft_targets("Training", y_train)
        y_val = _clip_soft_targets("Validation", y_val)

    init_rng, shuffle_rng, dropout_rng = rng_streams(config.seed)
    model = init_model(config, init_rng)
    history: List[EpochRecord] = []
    if config.epochs == 0:
        return model, history

    params = model.parameters()
    state = AdamState.zeros(params)
    n = len(x_train)
    show = settings.show_progress if show_progress is None else show_progress

    for epoch in tqdm(range(1, config.epochs + 1), desc="Training", unit="epoch", disable=not show, leave=False):
        order = shuffle_rng.permutation(n)
        total = 0.0
        for start in range(0, n, config.batch_size):
            rows = order[start : start + config.batch_size]
            predictions, cache = forward(model, x_train[rows], Mode.TRAIN, dropout_rng)
            batch_loss = loss(config.loss, predictions, y_train[rows])
            if not np.isfinite(batch_loss):
                raise DivergenceError("Training loss became non-finite", epoch=epoch)
            grads = backward(model, cache, y_train[rows])
            params, state = adam_step(params, grads, state, config.adam)
            if not all(np.isfinite(p).all() for p in params):
                raise DivergenceError("Network parameters became non-finite", epoch=epoch)
            model = model.with_parameters(params)
            total += batch_loss * len(rows)

        val_predictions, _ = forward(model, x_val, Mode.INFER)
        record = EpochRecord(epoch=epoch, train_loss=total / n, val_loss=loss(config.loss, val_predictions, y_val))
        if not np.isfinite(record.val_loss):
            raise DivergenceError("Validation loss became non-finite", epoch=epoch)
        history.append(record)
        logger.debug("epoch %d train %.6f val %.6f", epoch, record.train_loss, record.val_loss)

    if log_callback:
        last = history[-1]
        log_callback(f"   Trained {config.epochs} epochs: train loss {last.train_loss:.4f}, val loss {last.val_loss:.4f}")
    return model.with_parameters(params, trained=True), history


def train(
    matrix: FeatureMatrix,
    split: SplitIndices,
    config: MlpConfig,
    feature_names: Optional[Sequence[str]] = None,
    show_progress: Optional[bool] = None,
    log_callback: Optional[Callable[[str], None]] = None,
) -> Tuple[MlpModel, List[EpochRecord]]:
    """Train on the matrix's train rows, validating on its validation rows."""
    x = matrix.features(feature_names)
    y = matrix.target()
    return train_arrays(
        x[split.train], y[split.train], x[split.validation], y[split.validation],
        config, show_progress=show_progress, log_callback=log_callback,
    )


def predict(
    model: MlpModel,
    rows: Union[FeatureMatrix, np.ndarray],
    feature_names: Optional[Sequence[str]] = None,
) -> np.ndarray:
    """Infer-mode predictions (scaled prices), one per row."""
    if not model.trained:
        raise DataValidationError("Model is not trained")
    x = rows.features(feature_names) if isinstance(rows, FeatureMatrix) else rows
    predictions, _ = forward(model, x, Mode.INFER)
    return predictions


def write_history_csv(history: Sequence[EpochRecord], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(
        [(r.epoch, r.train_loss, r.val_loss) for r in history], columns=list(HISTORY_COLUMNS)
    )
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def read_history_csv(path: Union[str, Path]) -> List[EpochRecord]:
    frame = pd.read_csv(path, float_precision="round_trip")
    if list(frame.columns) != list(HISTORY_COLUMNS):
        raise DataValidationError(f"{path}: expected columns {list(HISTORY_COLUMNS)}, got {list(frame.columns)}")
    return [
        EpochRecord(epoch=int(row.epoch), train_loss=float(row.train_loss), val_loss=float(row.val_loss))
        for row in frame.itertuples(index=False)
    ]
