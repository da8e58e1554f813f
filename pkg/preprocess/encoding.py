"""
One-hot encoding of declared categorical columns.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config.errors import DataValidationError
from preprocess.matrix import ColumnInfo, ColumnKind, FeatureMatrix

logger = logging.getLogger(__name__)


def one_hot_name(column: str, label: str) -> str:
    return f"{column}={label}"


@dataclass(frozen=True)
class OneHotCategories:
    """Label set per categorical column, in lexicographic order."""

    categories: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {column: list(labels) for column, labels in self.categories.items()}

    @classmethod
    def from_dict(cls, payload: Mapping) -> "OneHotCategories":
        return cls({column: tuple(labels) for column, labels in payload.items()})


def fit_categories(
    matrix: FeatureMatrix, columns: Sequence[str], fit_rows: Optional[np.ndarray] = None
) -> OneHotCategories:
    fitted = {}
    for name in columns:
        if name not in matrix.columns or matrix.columns[name].kind is not ColumnKind.CATEGORICAL:
            raise DataValidationError(f"Column {name!r} is not a categorical column of the matrix")
        values = matrix.frame[name].astype(str)
        if fit_rows is not None:
            values = values.iloc[np.asarray(fit_rows, dtype=int)]
        fitted[name] = tuple(sorted(set(values)))
    return OneHotCategories(fitted)


def one_hot_encode(
    matrix: FeatureMatrix,
    categorical_columns: Sequence[str],
    categories: Optional[OneHotCategories] = None,
) -> FeatureMatrix:
    """
    Replace each categorical column with one 0/1 column per label, named
    ``column=label``, in place of the original column.

    Args:
        matrix: Matrix holding the categorical columns.
        categorical_columns: Columns to encode.
        categories: Fitted label sets (from the training rows); fitted on
            every row when omitted.

    Returns:
        The encoded matrix.
    """
    categories = categories or fit_categories(matrix, categorical_columns)
    encode = set(categorical_columns)
    pieces = []
    columns: Dict[str, ColumnInfo] = {}

    for name, info in matrix.columns.items():
        if name not in encode:
            pieces.append(matrix.frame[[name]])
            columns[name] = info
            continue
        labels = categories.categories.get(name)
        if labels is None:
            raise DataValidationError(f"No fitted categories for column {name!r}")
        values = matrix.frame[name].astype(str)
        unseen = sorted(set(values) - set(labels))
        if unseen:
            raise DataValidationError(f"Column {name!r} has label {unseen[0]!r} not seen when fitting")
        block = pd.DataFrame(
            {one_hot_name(name, label): (values == label).astype(float).to_numpy() for label in labels},
            index=matrix.frame.index,
        )
        pieces.append(block)
        for label in labels:
            columns[one_hot_name(name, label)] = ColumnInfo(ColumnKind.ONE_HOT, info.source, group=name)

    frame = pd.concat(pieces, axis=1) if pieces else matrix.frame.copy()
    logger.debug("One-hot encoded %d columns into %d", len(encode), sum(len(categories.categories[c]) for c in encode))
    return matrix.with_frame(frame, columns)
