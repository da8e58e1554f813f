"""
Standardization and log1p + min-max scaling with train-fit, apply-anywhere parameters.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from config.errors import DataValidationError
from preprocess.matrix import ColumnKind, FeatureMatrix

logger = logging.getLogger(__name__)


class ScaleMethod(str, Enum):
    STANDARD = "standard"
    MINMAX = "minmax"


@dataclass(frozen=True)
class ColumnScaler:
    """
    One fitted transform of one column.

    ``standard`` stores (mean, std); ``minmax`` stores (min, max) and may apply
    log1p first. Zero spread maps every input to 0.
    """

    column: str
    method: ScaleMethod
    low: float
    high: float
    log_applied: bool = False

    def __post_init__(self) -> None:
        if self.method is ScaleMethod.MINMAX and self.high < self.low:
            raise DataValidationError(f"{self.column}: max {self.high} below min {self.low}")
        if self.method is ScaleMethod.STANDARD and self.high < 0:
            raise DataValidationError(f"{self.column}: negative std {self.high}")

    @property
    def degenerate(self) -> bool:
        if self.method is ScaleMethod.STANDARD:
            return self.high == 0
        return self.high == self.low

    def apply(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        if self.log_applied:
            values = np.log1p(values)
        if self.degenerate:
            return np.zeros_like(values)
        if self.method is ScaleMethod.STANDARD:
            return (values - self.low) / self.high
        return (values - self.low) / (self.high - self.low)

    def inverse(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        if self.method is ScaleMethod.STANDARD:
            raw = values * self.high + self.low
        else:
            raw = values * (self.high - self.low) + self.low
        return np.expm1(raw) if self.log_applied else raw

    def to_dict(self) -> Dict:
        return {
            "column": self.column,
            "method": self.method.value,
            "low": self.low,
            "high": self.high,
            "log_applied": self.log_applied,
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "ColumnScaler":
        return cls(
            column=payload["column"],
            method=ScaleMethod(payload["method"]),
            low=float(payload["low"]),
            high=float(payload["high"]),
            log_applied=bool(payload.get("log_applied", False)),
        )


@dataclass(frozen=True)
class ScalerParams:
    """Ordered list of fitted column transforms."""

    steps: Tuple[ColumnScaler, ...] = field(default_factory=tuple)

    @property
    def columns(self) -> List[str]:
        seen: List[str] = []
        for step in self.steps:
            if step.column not in seen:
                seen.append(step.column)
        return seen

    def then(self, other: "ScalerParams") -> "ScalerParams":
        return ScalerParams(self.steps + other.steps)

    def for_column(self, column: str) -> List[ColumnScaler]:
        return [step for step in self.steps if step.column == column]

    def transform_column(self, column: str, values: np.ndarray) -> np.ndarray:
        steps = self.for_column(column)
        if not steps:
            raise DataValidationError(f"No scaler parameters for column {column!r}")
        values = np.asarray(values, dtype=float)
        for step in steps:
            values = step.apply(values)
        return values

    def inverse_column(self, column: str, values: np.ndarray) -> np.ndarray:
        """Undo every step fitted for ``column``, last step first."""
        steps = self.for_column(column)
        if not steps:
            raise DataValidationError(f"No scaler parameters for column {column!r}")
        values = np.asarray(values, dtype=float)
        for step in reversed(steps):
            values = step.inverse(values)
        return values

    def to_dict(self) -> Dict:
        return {"steps": [step.to_dict() for step in self.steps]}

    @classmethod
    def from_dict(cls, payload: Mapping) -> "ScalerParams":
        return cls(tuple(ColumnScaler.from_dict(step) for step in payload.get("steps", [])))


def _check_numeric(matrix: FeatureMatrix, columns: Sequence[str]) -> None:
    for name in columns:
        info = matrix.columns.get(name)
        if info is None:
            raise DataValidationError(f"Matrix has no column {name!r}")
        if info.kind is ColumnKind.CATEGORICAL:
            raise DataValidationError(f"Column {name!r} is categorical and cannot be scaled")


def _fit_values(matrix: FeatureMatrix, name: str, fit_rows: Optional[np.ndarray]) -> np.ndarray:
    values = matrix.frame[name].to_numpy(dtype=float)
    if fit_rows is not None:
        values = values[np.asarray(fit_rows, dtype=int)]
    if values.size == 0:
        raise DataValidationError(f"No rows to fit scaler for column {name!r}")
    return values


def _apply_steps(matrix: FeatureMatrix, steps: Sequence[ColumnScaler]) -> FeatureMatrix:
    frame = matrix.frame.copy()
    for step in steps:
        frame[step.column] = step.apply(frame[step.column].to_numpy(dtype=float))
    return matrix.with_frame(frame)


def standardize(
    matrix: FeatureMatrix, columns: Sequence[str], fit_rows: Optional[np.ndarray] = None
) -> Tuple[FeatureMatrix, ScalerParams]:
    """Center each column on its mean and divide by its population std."""
    _check_numeric(matrix, columns)
    steps = []
    for name in columns:
        values = _fit_values(matrix, name, fit_rows)
        steps.append(ColumnScaler(name, ScaleMethod.STANDARD, float(values.mean()), float(values.std())))
    return _apply_steps(matrix, steps), ScalerParams(tuple(steps))


def minmax_scale(
    matrix: FeatureMatrix,
    columns: Sequence[str],
    log_columns: Sequence[str] = (),
    fit_rows: Optional[np.ndarray] = None,
) -> Tuple[FeatureMatrix, ScalerParams]:
    """
    Map each column into [0, 1] by (x - min) / (max - min), after log1p on
    ``log_columns``.

    A column whose fitted max equals its min maps to 0 and logs a warning.
    """
    _check_numeric(matrix, columns)
    log_set = set(log_columns)
    stray = log_set - set(columns)
    if stray:
        raise DataValidationError(f"log_columns {sorted(stray)} are not among the scaled columns")

    steps = []
    for name in columns:
        values = _fit_values(matrix, name, fit_rows)
        logged = name in log_set
        if logged:
            every = matrix.frame[name].to_numpy(dtype=float)
            if (every <= -1).any():
                raise DataValidationError(f"Column {name!r} has values <= -1 outside the log1p domain")
            values = np.log1p(values)
        step = ColumnScaler(name, ScaleMethod.MINMAX, float(values.min()), float(values.max()), logged)
        if step.degenerate:
            logger.warning("Column %s has max == min (%g); scaling it to 0", name, step.low)
        steps.append(step)
    return _apply_steps(matrix, steps), ScalerParams(tuple(steps))


def apply_scaler(matrix: FeatureMatrix, params: ScalerParams) -> FeatureMatrix:
    """Apply stored transforms; results are not clipped to [0, 1]."""
    missing = [name for name in params.columns if name not in matrix.columns]
    if missing:
        raise DataValidationError(f"Matrix lacks scaled columns {missing}")
    return _apply_steps(matrix, params.steps)
