"""
Map predicted scaled prices back to catalog plans.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from config.errors import DataValidationError
from preprocess.build import TARGET_COLUMN
from preprocess.scaling import ScalerParams
from synthgen.catalog import PlanCatalog


def _nearest_plan(price: float, catalog: PlanCatalog, country: str) -> str:
    prices = catalog.prices(country)
    # prices ascend, so argmin's first hit is the cheaper plan on an exact tie
    return catalog.labels(country)[int(np.argmin(np.abs(prices - price)))]


def price_to_class(
    predicted_scaled_price: float,
    catalog: PlanCatalog,
    country: str,
    scaler: ScalerParams,
    target_column: str = TARGET_COLUMN,
) -> str:
    """
    Unscale one prediction and return the country's plan with the nearest
    monthly price. Exact ties go to the cheaper plan.
    """
    if not np.isfinite(predicted_scaled_price):
        raise DataValidationError(f"Prediction {predicted_scaled_price} is not finite")
    price = float(scaler.inverse_column(target_column, np.array([predicted_scaled_price]))[0])
    return _nearest_plan(price, catalog, country)


def prices_to_classes(
    predictions: Sequence[float],
    countries: Sequence[str],
    catalog: PlanCatalog,
    scaler: ScalerParams,
    target_column: str = TARGET_COLUMN,
) -> List[str]:
    """Vectorised ``price_to_class`` over aligned predictions and countries."""
    predictions = np.asarray(predictions, dtype=float).reshape(-1)
    if len(predictions) != len(countries):
        raise DataValidationError(f"{len(predictions)} predictions but {len(countries)} countries")
    if not np.isfinite(predictions).all():
        raise DataValidationError("Predictions hold non-finite values")
    prices = scaler.inverse_column(target_column, predictions)
    return [_nearest_plan(float(price), catalog, str(country)) for price, country in zip(prices, countries)]


@dataclass(frozen=True)
class PlanAccuracyScorer:
    """
    Grid-search scorer: fraction of validation rows whose bridged plan equals
    the true plan. ``countries`` and ``labels`` are aligned with the
    validation rows.
    """

    catalog: PlanCatalog
    scaler: ScalerParams
    countries: Tuple[str, ...]
    labels: Tuple[str, ...]
    target_column: str = TARGET_COLUMN

    def __call__(self, predictions: np.ndarray, targets: np.ndarray) -> float:
        predicted = prices_to_classes(predictions, self.countries, self.catalog, self.scaler, self.target_column)
        return float(np.mean([p == t for p, t in zip(predicted, self.labels)]))
