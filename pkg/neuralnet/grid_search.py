"""
Batch-size x epoch grid search over one base configuration.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from config.errors import DataValidationError
from config.settings import settings
from neuralnet.config import MlpConfig
from neuralnet.losses import loss
from neuralnet.training import predict, train_arrays
from preprocess.matrix import FeatureMatrix
from preprocess.splitting import SplitIndices

logger = logging.getLogger(__name__)

# (validation predictions, validation targets) -> accuracy in [0, 1]
Scorer = Callable[[np.ndarray, np.ndarray], float]

TRIAL_COLUMNS = ("index", "batch_size", "epochs", "seed", "val_accuracy", "val_loss")
SEED_MODULUS = 2**64


@dataclass(frozen=True)
class GridTrial:
    index: int
    batch_size: int
    epochs: int
    seed: int
    val_accuracy: float
    val_loss: float


@dataclass(frozen=True)
class GridResult:
    best_config: MlpConfig
    best_index: int
    trials: Tuple[GridTrial, ...]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(t) for t in self.trials], columns=list(TRIAL_COLUMNS))


def nearest_level_accuracy(predictions: np.ndarray, targets: np.ndarray) -> float:
    """
    Snap each prediction to the nearest distinct target value and count exact
    hits. Ties go to the lower value.
    """
    levels = np.unique(targets)
    distance = np.abs(np.asarray(predictions).reshape(-1, 1) - levels.reshape(1, -1))
    snapped = levels[np.argmin(distance, axis=1)]
    return float(np.mean(snapped == targets))


def _check_grid(name: str, grid: Sequence[int]) -> Tuple[int, ...]:
    values = tuple(int(v) for v in grid)
    if not values:
        raise DataValidationError(f"{name} grid is empty")
    if any(v < 1 for v in values):
        raise DataValidationError(f"{name} grid values must be >= 1, got {list(values)}")
    return values


def _run_trial(
    index: int,
    config: MlpConfig,
    data: Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray],
    scorer: Scorer,
) -> GridTrial:
    x_train, y_train, x_val, y_val = data
    model, history = train_arrays(x_train, y_train, x_val, y_val, config, show_progress=False)
    if model.trained:
        predictions = predict(model, x_val)
        val_loss = history[-1].val_loss
    else:
        predictions = np.zeros(len(y_val))
        val_loss = loss(config.loss, predictions, y_val)
    return GridTrial(
        index=index,
        batch_size=config.batch_size,
        epochs=config.epochs,
        seed=config.seed,
        val_accuracy=float(scorer(predictions, y_val)),
        val_loss=float(val_loss),
    )


def grid_search(
    matrix: FeatureMatrix,
    split: SplitIndices,
    base_config: MlpConfig,
    batch_grid: Sequence[int],
    epoch_grid: Sequence[int],
    scorer: Optional[Scorer] = None,
    feature_names: Optional[Sequence[str]] = None,
    max_workers: Optional[int] = None,
    log_callback: Optional[Callable[[str], None]] = None,
) -> GridResult:
    """
    Train one network per (batch size, epochs) pair.

    Trials are numbered batch-major; trial ``i`` trains with seed
    ``(base_config.seed + i) mod 2**64``. The best trial has the highest validation
    accuracy, then the fewest epochs, then the smallest batch; ``best_config``
    carries that trial's seed so retraining reproduces it.
    Trials run in a process pool when ``max_workers > 1``; the table is
    always in trial order.
    """
    batches = _check_grid("Batch", batch_grid)
    epochs = _check_grid("Epoch", epoch_grid)
    scorer = scorer or nearest_level_accuracy
    workers = settings.max_workers if max_workers is None else max_workers

    x = matrix.features(feature_names)
    y = matrix.target()
    data = (x[split.train], y[split.train], x[split.validation], y[split.validation])
    configs = [
        base_config.with_overrides(batch_size=b, epochs=e, seed=(base_config.seed + i) % SEED_MODULUS)
        for i, (b, e) in enumerate(itertools.product(batches, epochs))
    ]
    show = settings.show_progress

    if workers > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_trial, i, c, data, scorer) for i, c in enumerate(configs)]
            trials = [f.result() for f in tqdm(futures, desc="Grid search", unit="trial", disable=not show)]
    else:
        trials = [
            _run_trial(i, c, data, scorer)
            for i, c in enumerate(tqdm(configs, desc="Grid search", unit="trial", disable=not show))
        ]

    best = min(trials, key=lambda t: (-t.val_accuracy, t.epochs, t.batch_size))
    message = (
        f"   Grid search: {len(trials)} trials, best batch {best.batch_size} / epochs {best.epochs} "
        f"(val accuracy {best.val_accuracy:.4f})"
    )
    if log_callback:
        log_callback(message)
    else:
        logger.info(message)
    best_config = configs[best.index]
    return GridResult(best_config=best_config, best_index=best.index, trials=tuple(trials))


def write_trial_table(result: GridResult, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    result.to_frame().to_csv(path, index=False, lineterminator="\n")
    return path


def read_trial_table(path: Union[str, Path]) -> List[GridTrial]:
    frame = pd.read_csv(path, float_precision="round_trip")
    if list(frame.columns) != list(TRIAL_COLUMNS):
        raise DataValidationError(f"{path}: expected columns {list(TRIAL_COLUMNS)}, got {list(frame.columns)}")
    return [
        GridTrial(
            index=int(r["index"]), batch_size=int(r["batch_size"]), epochs=int(r["epochs"]), seed=int(r["seed"]),
            val_accuracy=float(r["val_accuracy"]), val_loss=float(r["val_loss"]),
        )
        for r in frame.to_dict("records")
    ]
