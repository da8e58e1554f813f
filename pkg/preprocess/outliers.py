"""
Z-score outlier removal on numeric domain columns.
"""

from __future__ import annotations

import logging
import math
from typing import Optional, Sequence

import numpy as np

from config.errors import DataValidationError
from preprocess.matrix import ColumnSource, FeatureMatrix

logger = logging.getLogger(__name__)

DEFAULT_Z_THRESHOLD = 4.0


def outlier_mask(matrix: FeatureMatrix, z_threshold: float, columns: Optional[Sequence[str]] = None) -> np.ndarray:
    """
    Boolean mask of rows where any checked column lies more than
    ``z_threshold`` population standard deviations from its mean.

    Columns with zero spread never flag a row.
    """
    if not z_threshold > 0:
        raise DataValidationError(f"z_threshold must be positive, got {z_threshold}")
    if columns is None:
        columns = [name for name in matrix.numeric_columns() if matrix.columns[name].source is ColumnSource.DOMAIN]
    mask = np.zeros(matrix.n_rows, dtype=bool)
    if math.isinf(z_threshold) or not columns:
        return mask
    values = matrix.features(columns)
    mean = values.mean(axis=0)
    std = values.std(axis=0)
    deviation = np.abs(values - mean)
    spread = std > 0
    mask |= (deviation[:, spread] > z_threshold * std[spread]).any(axis=1)
    return mask


def remove_outliers(
    matrix: FeatureMatrix,
    z_threshold: float = DEFAULT_Z_THRESHOLD,
    columns: Optional[Sequence[str]] = None,
) -> FeatureMatrix:
    """Drop outlier rows; the dropped count is logged."""
    mask = outlier_mask(matrix, z_threshold, columns)
    dropped = int(mask.sum())
    if dropped == matrix.n_rows:
        raise DataValidationError(f"Outlier removal at z > {z_threshold} dropped every row")
    logger.info("Removed %d outlier rows of %d (z > %g)", dropped, matrix.n_rows, z_threshold)
    if dropped == 0:
        return matrix
    return matrix.take(np.flatnonzero(~mask))
