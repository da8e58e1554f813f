"""
The ordered preprocessing chain: outliers, split, scaling, one-hot encoding.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, Mapping, Optional, Tuple

from config.errors import DataValidationError
from config.settings import settings
from ingest.indicators import log_scaled_names
from preprocess.build import DOMAIN_CATEGORICAL_COLUMNS
from preprocess.encoding import OneHotCategories, fit_categories, one_hot_encode
from preprocess.matrix import FeatureMatrix
from preprocess.outliers import DEFAULT_Z_THRESHOLD, remove_outliers
from preprocess.scaling import ScalerParams, minmax_scale, standardize
from preprocess.splitting import DEFAULT_RATIOS, SplitIndices, split

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PreprocessOptions:
    """
    Column roles and constants of the chain.

    ``log_columns`` defaults to the heavy-tailed default indicators;
    ``standardize_columns`` is empty unless a run asks for it; min-max applies
    to every numeric column including the target.
    """

    seed: int = field(default_factory=lambda: settings.default_seed)
    ratios: Tuple[float, float, float] = DEFAULT_RATIOS
    z_threshold: float = DEFAULT_Z_THRESHOLD
    categorical_columns: Tuple[str, ...] = DOMAIN_CATEGORICAL_COLUMNS
    log_columns: Tuple[str, ...] = field(default_factory=lambda: tuple(log_scaled_names()))
    standardize_columns: Tuple[str, ...] = ()

    def to_dict(self) -> Dict:
        payload = asdict(self)
        for name in ("ratios", "categorical_columns", "log_columns", "standardize_columns"):
            payload[name] = list(payload[name])
        return payload

    @classmethod
    def from_dict(cls, payload: Mapping) -> "PreprocessOptions":
        known = {name: payload[name] for name in cls.__dataclass_fields__ if name in payload}
        for name in ("ratios", "categorical_columns", "log_columns", "standardize_columns"):
            if name in known:
                known[name] = tuple(known[name])
        return cls(**known)


@dataclass(frozen=True, eq=False)
class PreparedData:
    matrix: FeatureMatrix
    scaler: ScalerParams
    split: SplitIndices
    categories: OneHotCategories
    dropped_outliers: int


def prepare_features(base: FeatureMatrix, options: Optional[PreprocessOptions] = None) -> PreparedData:
    """
    Run the chain on a base matrix.

    Outlier filtering runs first, over every row: the split is drawn on the
    rows that survive it, so there is no training partition to fit on yet.
    Every later fitted parameter (scaler ranges, one-hot label sets) comes
    from the training rows only.
    """
    options = options or PreprocessOptions()
    unknown = [name for name in options.categorical_columns if name not in base.columns]
    if unknown:
        raise DataValidationError(f"Declared categorical columns not in the matrix: {unknown}")

    cleaned = remove_outliers(base, options.z_threshold)
    dropped = base.n_rows - cleaned.n_rows
    parts = split(cleaned.n_rows, options.ratios, options.seed)

    scaler = ScalerParams()
    matrix = cleaned
    if options.standardize_columns:
        matrix, standard = standardize(matrix, options.standardize_columns, fit_rows=parts.train)
        scaler = scaler.then(standard)

    numeric = matrix.numeric_columns(include_target=True)
    log_columns = [name for name in options.log_columns if name in numeric]
    matrix, minmax = minmax_scale(matrix, numeric, log_columns, fit_rows=parts.train)
    scaler = scaler.then(minmax)

    categories = fit_categories(matrix, options.categorical_columns, fit_rows=parts.train)
    matrix = one_hot_encode(matrix, options.categorical_columns, categories)

    logger.info(
        "Prepared matrix: %d rows, %d model inputs, split %s",
        matrix.n_rows, matrix.n_cols - 1, "/".join(str(s) for s in parts.sizes),
    )
    return PreparedData(matrix=matrix, scaler=scaler, split=parts, categories=categories, dropped_outliers=dropped)
