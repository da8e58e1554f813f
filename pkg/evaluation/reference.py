"""
Published reference figures for the price-prediction models.

These were measured on proprietary subscriber data. They are shipped for
side-by-side reports only and are never compared against synthetic runs.
"""

from __future__ import annotations

from typing import Tuple

import pandas as pd

from evaluation.comparison import COMPARISON_COLUMNS, ModelRun, compare_models
from evaluation.metrics import Averaging, MetricsReport

SELECT = "select"
FULL = "full"


def _published(model: str, features: str, accuracy: float, f1: float, precision: float, recall: float) -> ModelRun:
    report = MetricsReport(
        accuracy=accuracy, precision=precision, recall=recall, f1=f1, averaging=Averaging.WEIGHTED_MACRO
    )
    return ModelRun(model=model, features=features, report=report)


# accuracy, F1, precision, recall
PUBLISHED_REFERENCE_RUNS: Tuple[ModelRun, ...] = (
    _published("ANN original", SELECT, 0.8042, 0.4853, 0.8305, 0.5905),
    _published("ANN final", SELECT, 0.9506, 0.9182, 0.9394, 0.9013),
    _published("ANN original", FULL, 0.7948, 0.5470, 0.7845, 0.5511),
    _published("ANN final", FULL, 0.9443, 0.9058, 0.9278, 0.8958),
    _published("SGD", SELECT, 0.7666, 0.4106, 0.8994, 0.4719),
    _published("Gaussian NB", SELECT, 0.7416, 0.5046, 0.8994, 0.5489),
    _published("Random Forest", SELECT, 0.8984, 0.7146, 0.8994, 0.6781),
)


def published_reference_table() -> pd.DataFrame:
    """Reference rows in comparison-table layout, tagged ``published`` in the features column."""
    table = compare_models(PUBLISHED_REFERENCE_RUNS)
    table["features"] = table["features"] + " (published)"
    return table[list(COMPARISON_COLUMNS)]
