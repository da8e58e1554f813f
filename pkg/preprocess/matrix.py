"""
FeatureMatrix: a named-column frame with column kinds, a target and row metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from config.errors import DataValidationError

ROW_META_COLUMNS = ("country", "plan_label")


class ColumnKind(str, Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"
    ONE_HOT = "one-hot"


class ColumnSource(str, Enum):
    DOMAIN = "domain"
    CULTURE = "culture"
    INDICATOR = "indicator"
    TARGET = "target"


@dataclass(frozen=True)
class ColumnInfo:
    kind: ColumnKind
    source: ColumnSource
    group: Optional[str] = None

    def to_dict(self) -> Dict:
        return {"kind": self.kind.value, "source": self.source.value, "group": self.group}

    @classmethod
    def from_dict(cls, payload: Mapping) -> "ColumnInfo":
        return cls(ColumnKind(payload["kind"]), ColumnSource(payload["source"]), payload.get("group"))


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """
    Immutable table of model rows.

    ``frame`` holds one column per entry of ``columns`` in the same order.
    Categorical columns carry string labels until one-hot encoding replaces
    them; every other column is finite float. ``row_meta`` keeps each row's
    country and true plan label aligned with ``frame``.
    """

    frame: pd.DataFrame
    columns: Dict[str, ColumnInfo]
    target_name: str
    row_meta: pd.DataFrame = field(default_factory=pd.DataFrame)

    def __post_init__(self) -> None:
        if list(self.frame.columns) != list(self.columns):
            raise DataValidationError("Frame columns and column kinds disagree")
        if self.target_name not in self.columns:
            raise DataValidationError(f"Target column {self.target_name!r} is missing")
        if len(self.row_meta) and len(self.row_meta) != len(self.frame):
            raise DataValidationError("Row metadata length does not match the frame")
        numeric = self.numeric_columns(include_one_hot=True, include_target=True)
        if numeric:
            values = self.frame[numeric].to_numpy(dtype=float)
            if not np.isfinite(values).all():
                bad = [name for name in numeric if not np.isfinite(self.frame[name].to_numpy(dtype=float)).all()]
                raise DataValidationError(f"Non-finite values in columns {bad}")
        for group, members in self.one_hot_groups().items():
            sums = self.frame[members].to_numpy(dtype=float).sum(axis=1)
            if not np.all(sums == 1.0):
                raise DataValidationError(f"One-hot group {group!r} does not sum to 1 on every row")

    @property
    def column_names(self) -> List[str]:
        return list(self.columns)

    @property
    def n_rows(self) -> int:
        return len(self.frame)

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    @property
    def feature_names(self) -> List[str]:
        return [name for name in self.columns if name != self.target_name]

    def numeric_columns(self, include_one_hot: bool = False, include_target: bool = False) -> List[str]:
        kinds = {ColumnKind.NUMERIC} | ({ColumnKind.ONE_HOT} if include_one_hot else set())
        return [
            name
            for name, info in self.columns.items()
            if info.kind in kinds and (include_target or name != self.target_name)
        ]

    def categorical_columns(self) -> List[str]:
        return [name for name, info in self.columns.items() if info.kind is ColumnKind.CATEGORICAL]

    def columns_from(self, source: ColumnSource) -> List[str]:
        return [name for name, info in self.columns.items() if info.source is source]

    def one_hot_groups(self) -> Dict[str, List[str]]:
        groups: Dict[str, List[str]] = {}
        for name, info in self.columns.items():
            if info.kind is ColumnKind.ONE_HOT:
                groups.setdefault(info.group or name, []).append(name)
        return groups

    def values(self) -> np.ndarray:
        """Dense row-major float matrix of all columns."""
        if self.categorical_columns():
            raise DataValidationError(
                f"Matrix still holds categorical columns {self.categorical_columns()}; encode them first"
            )
        return self.frame.to_numpy(dtype=float)

    def features(self, names: Optional[Sequence[str]] = None) -> np.ndarray:
        names = list(names) if names is not None else self.feature_names
        missing = [name for name in names if name not in self.columns]
        if missing:
            raise DataValidationError(f"Matrix has no columns {missing}")
        return self.frame[names].to_numpy(dtype=float)

    def target(self) -> np.ndarray:
        return self.frame[self.target_name].to_numpy(dtype=float)

    def plan_labels(self) -> List[str]:
        return [str(label) for label in self.row_meta["plan_label"]]

    def countries(self) -> List[str]:
        return [str(code) for code in self.row_meta["country"]]

    def take(self, rows: Iterable[int]) -> "FeatureMatrix":
        """Rows at the given positions, re-indexed from 0."""
        rows = np.asarray(list(rows), dtype=int)
        meta = self.row_meta.iloc[rows].reset_index(drop=True) if len(self.row_meta) else self.row_meta
        return replace(self, frame=self.frame.iloc[rows].reset_index(drop=True), row_meta=meta)

    def with_frame(self, frame: pd.DataFrame, columns: Optional[Dict[str, ColumnInfo]] = None) -> "FeatureMatrix":
        return replace(self, frame=frame, columns=dict(columns if columns is not None else self.columns))

    def select(self, names: Sequence[str]) -> "FeatureMatrix":
        """Keep ``names`` (in matrix order) plus the target."""
        keep = set(names) | {self.target_name}
        unknown = keep - set(self.columns)
        if unknown:
            raise DataValidationError(f"Matrix has no columns {sorted(unknown)}")
        ordered = [name for name in self.columns if name in keep]
        return self.with_frame(self.frame[ordered].copy(), {name: self.columns[name] for name in ordered})

    def equals(self, other: "FeatureMatrix") -> bool:
        return (
            self.columns == other.columns
            and self.target_name == other.target_name
            and self.frame.equals(other.frame)
            and self.row_meta.equals(other.row_meta)
        )


def count_model_inputs(matrix: FeatureMatrix) -> int:
    """Number of input columns the network sees (every column but the target)."""
    if matrix.categorical_columns():
        raise DataValidationError("Count model inputs after one-hot encoding")
    return matrix.n_cols - 1
