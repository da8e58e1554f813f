"""
Confusion counts and the accuracy / precision / recall / F1 family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from config.errors import DataValidationError


class Averaging(str, Enum):
    BINARY = "binary"
    WEIGHTED_MACRO = "weighted-macro"


@dataclass(frozen=True)
class ClassCounts:
    """One-vs-rest tallies for a single class."""

    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def support(self) -> int:
        return self.tp + self.fn


@dataclass(frozen=True)
class ConfusionCounts:
    classes: Tuple[str, ...]
    per_class: Tuple[ClassCounts, ...]
    # rows: true class, columns: predicted class
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = self.n_samples
        for label, counts in zip(self.classes, self.per_class):
            if min(counts.tp, counts.fp, counts.fn, counts.tn) < 0:
                raise DataValidationError(f"Negative confusion count for class {label!r}")
            if counts.tp + counts.fp + counts.fn + counts.tn != n:
                raise DataValidationError(f"Counts for class {label!r} do not add up to {n} samples")

    @property
    def n_samples(self) -> int:
        return int(sum(sum(row) for row in self.matrix))

    @property
    def correct(self) -> int:
        return int(sum(self.matrix[i][i] for i in range(len(self.classes))))

    def counts_for(self, label: str) -> ClassCounts:
        if label not in self.classes:
            raise DataValidationError(f"Unknown class {label!r}; classes are {list(self.classes)}")
        return self.per_class[self.classes.index(label)]

    @classmethod
    def binary(
        cls, tp: int, fp: int, fn: int, tn: int, positive: str = "yes", negative: str = "no"
    ) -> "ConfusionCounts":
        """Two-class counts from the positive class's tallies."""
        return cls(
            classes=(negative, positive),
            per_class=(ClassCounts(tp=tn, fp=fn, fn=fp, tn=tp), ClassCounts(tp=tp, fp=fp, fn=fn, tn=tn)),
            matrix=((tn, fp), (fn, tp)),
        )

    def to_dict(self) -> Dict:
        return {
            "classes": list(self.classes),
            "matrix": [list(row) for row in self.matrix],
            "per_class": {
                label: {"tp": c.tp, "fp": c.fp, "fn": c.fn, "tn": c.tn}
                for label, c in zip(self.classes, self.per_class)
            },
        }


def confusion(
    predicted_labels: Sequence[str],
    true_labels: Sequence[str],
    classes: Sequence[str],
) -> ConfusionCounts:
    """One-vs-rest counts for every class, plus the full confusion matrix."""
    classes = tuple(str(c) for c in classes)
    if len(set(classes)) != len(classes):
        raise DataValidationError(f"Duplicate classes in {list(classes)}")
    if len(predicted_labels) != len(true_labels):
        raise DataValidationError(f"{len(predicted_labels)} predictions but {len(true_labels)} true labels")
    position = {label: i for i, label in enumerate(classes)}
    unknown = sorted({str(x) for x in list(predicted_labels) + list(true_labels)} - set(position))
    if unknown:
        raise DataValidationError(f"Labels {unknown} are not among the classes {list(classes)}")

    k = len(classes)
    grid = np.zeros((k, k), dtype=int)
    if len(true_labels):
        np.add.at(
            grid,
            ([position[str(t)] for t in true_labels], [position[str(p)] for p in predicted_labels]),
            1,
        )
    n = int(grid.sum())
    per_class = []
    for i in range(k):
        tp = int(grid[i, i])
        fn = int(grid[i].sum()) - tp
        fp = int(grid[:, i].sum()) - tp
        per_class.append(ClassCounts(tp=tp, fp=fp, fn=fn, tn=n - tp - fp - fn))
    return ConfusionCounts(
        classes=classes,
        per_class=tuple(per_class),
        matrix=tuple(tuple(int(v) for v in row) for row in grid),
    )


def _ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator else 0.0


def precision(counts: ClassCounts) -> float:
    return _ratio(counts.tp, counts.tp + counts.fp)


def recall(counts: ClassCounts) -> float:
    return _ratio(counts.tp, counts.tp + counts.fn)


def f1_from_counts(tp: int, fp: int, fn: int) -> float:
    """F1 = TP / (TP + (FP + FN) / 2)."""
    return _ratio(tp, tp + 0.5 * (fp + fn))


def f1_from_rates(p: float, r: float) -> float:
    """F1 = 2PR / (P + R)."""
    return _ratio(2.0 * p * r, p + r)


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    averaging: Averaging
    support: Dict[str, int] = field(default_factory=dict)
    per_class: Dict[str, Dict[str, float]] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "averaging": self.averaging.value,
            "support": dict(self.support),
            "per_class": {label: dict(values) for label, values in self.per_class.items()},
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "MetricsReport":
        return cls(
            accuracy=float(payload["accuracy"]),
            precision=float(payload["precision"]),
            recall=float(payload["recall"]),
            f1=float(payload["f1"]),
            averaging=Averaging(payload["averaging"]),
            support={k: int(v) for k, v in payload.get("support", {}).items()},
            per_class={k: {m: float(x) for m, x in v.items()} for k, v in payload.get("per_class", {}).items()},
        )


def metrics(
    counts: ConfusionCounts,
    averaging: Averaging = Averaging.WEIGHTED_MACRO,
    positive: Optional[str] = None,
) -> MetricsReport:
    """
    Binary mode scores the ``positive`` class (default: the second of two
    classes) with accuracy = (TP + TN) / n. Weighted-macro mode averages the
    per-class precision, recall and F1 weighted by support, with accuracy =
    correct / n. A zero denominator scores 0.
    """
    averaging = Averaging(averaging)
    n = counts.n_samples
    if n == 0:
        raise DataValidationError("Cannot score zero samples")

    per_class = {
        label: {"precision": precision(c), "recall": recall(c), "f1": f1_from_counts(c.tp, c.fp, c.fn)}
        for label, c in zip(counts.classes, counts.per_class)
    }
    support = {label: c.support for label, c in zip(counts.classes, counts.per_class)}

    if averaging is Averaging.BINARY:
        if positive is None:
            if len(counts.classes) != 2:
                raise DataValidationError(
                    f"Binary averaging over {len(counts.classes)} classes needs an explicit positive class"
                )
            positive = counts.classes[1]
        c = counts.counts_for(positive)
        return MetricsReport(
            accuracy=(c.tp + c.tn) / n,
            precision=per_class[positive]["precision"],
            recall=per_class[positive]["recall"],
            f1=per_class[positive]["f1"],
            averaging=averaging,
            support=support,
            per_class=per_class,
        )

    weights = {label: support[label] / n for label in counts.classes}
    return MetricsReport(
        accuracy=counts.correct / n,
        precision=float(sum(weights[label] * per_class[label]["precision"] for label in counts.classes)),
        recall=float(sum(weights[label] * per_class[label]["recall"] for label in counts.classes)),
        f1=float(sum(weights[label] * per_class[label]["f1"] for label in counts.classes)),
        averaging=averaging,
        support=support,
        per_class=per_class,
    )


def evaluate_predictions(
    predicted_labels: Sequence[str],
    true_labels: Sequence[str],
    classes: Optional[Sequence[str]] = None,
    averaging: Averaging = Averaging.WEIGHTED_MACRO,
) -> Tuple[ConfusionCounts, MetricsReport]:
    """Confusion counts and metrics in one call; classes default to every label seen, sorted."""
    if classes is None:
        classes = sorted({str(x) for x in list(true_labels) + list(predicted_labels)})
    counts = confusion(predicted_labels, true_labels, classes)
    return counts, metrics(counts, averaging)
