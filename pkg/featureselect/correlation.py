"""
Pearson correlation and the all-pairs correlation matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence

import numpy as np

from config.errors import DataValidationError
from preprocess.matrix import ColumnKind, FeatureMatrix

logger = logging.getLogger(__name__)


def _centered_r(x: np.ndarray, y: np.ndarray) -> Optional[float]:
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        return None
    r = float(np.dot(dx, dy)) / float(np.sqrt(sxx * syy))
    return min(1.0, max(-1.0, r))


def pearson(x: Sequence[float], y: Sequence[float], warn: bool = True) -> float:
    """
    Pearson's r of two equal-length vectors.

    A constant vector has no defined correlation; it is reported as 0 with a
    warning.
    """
    x = np.array(x, dtype=float)
    y = np.array(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DataValidationError(f"pearson needs two equal-length vectors, got {x.shape} and {y.shape}")
    if x.size < 2:
        raise DataValidationError("pearson needs at least 2 values")
    r = _centered_r(x, y)
    if r is None:
        if warn:
            logger.warning("Correlation with a constant vector is undefined; using 0")
        return 0.0
    return r


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """
    Symmetric matrix of Pearson coefficients over ``names``.

    ``groups`` maps one-hot member columns to their group; ``constant`` lists
    columns with zero spread (their row and diagonal are 0).
    """

    names: List[str]
    r: np.ndarray
    groups: Dict[str, str] = field(default_factory=dict)
    constant: FrozenSet[str] = frozenset()

    def __post_init__(self) -> None:
        n = len(self.names)
        if self.r.shape != (n, n):
            raise DataValidationError(f"Correlation matrix shape {self.r.shape} does not match {n} names")
        if len(set(self.names)) != n:
            raise DataValidationError("Correlation matrix names repeat")

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError as exc:
            raise DataValidationError(f"No column {name!r} in correlation matrix") from exc

    def value(self, a: str, b: str) -> float:
        return float(self.r[self.index(a), self.index(b)])

    def subset(self, names: Sequence[str]) -> "CorrelationMatrix":
        keep = [name for name in self.names if name in set(names)]
        idx = [self.index(name) for name in keep]
        return CorrelationMatrix(
            names=keep,
            r=self.r[np.ix_(idx, idx)].copy(),
            groups={k: v for k, v in self.groups.items() if k in keep},
            constant=frozenset(c for c in self.constant if c in keep),
        )

    def equals(self, other: "CorrelationMatrix", atol: float = 0.0) -> bool:
        return self.names == other.names and np.allclose(self.r, other.r, rtol=0.0, atol=atol)


def correlation_matrix(matrix: FeatureMatrix, columns: Optional[Sequence[str]] = None) -> CorrelationMatrix:
    """
    All-pairs Pearson over numeric and one-hot columns (target included).

    Each pair goes through ``pearson`` so every entry equals the pairwise call;
    the lower triangle mirrors the upper.
    """
    if matrix.n_rows < 2:
        raise DataValidationError("Correlation needs at least 2 rows")
    names = list(columns) if columns is not None else matrix.numeric_columns(include_one_hot=True, include_target=True)
    data = np.ascontiguousarray(matrix.features(names).T)
    n = len(names)
    constant = frozenset(name for j, name in enumerate(names) if np.ptp(data[j]) == 0)
    for name in sorted(constant):
        logger.warning("Column %s is constant; its correlations are set to 0", name)

    r = np.zeros((n, n))
    for i in range(n):
        if names[i] in constant:
            continue
        r[i, i] = 1.0
        for j in range(i + 1, n):
            if names[j] in constant:
                continue
            r[i, j] = r[j, i] = pearson(data[i], data[j], warn=False)

    groups = {
        name: matrix.columns[name].group
        for name in names
        if matrix.columns[name].kind is ColumnKind.ONE_HOT and matrix.columns[name].group
    }
    logger.info("Computed %dx%d correlation matrix", n, n)
    return CorrelationMatrix(names=names, r=r, groups=groups, constant=constant)
