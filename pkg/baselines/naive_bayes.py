"""
Gaussian Naive Bayes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from baselines.labels import MODEL_VERSION, check_rows, check_version, encode_labels
from config.errors import DataValidationError

DEFAULT_VAR_SMOOTHING = 1e-9


@dataclass(frozen=True, eq=False)
class GnbModel:
    classes: Tuple[str, ...]
    priors: np.ndarray
    means: np.ndarray
    variances: np.ndarray
    var_smoothing: float = DEFAULT_VAR_SMOOTHING

    def __post_init__(self) -> None:
        k = len(self.classes)
        if self.priors.shape != (k,) or self.means.shape[0] != k or self.means.shape != self.variances.shape:
            raise DataValidationError("Naive Bayes parameters have inconsistent shapes")
        if abs(float(self.priors.sum()) - 1.0) > 1e-9:
            raise DataValidationError(f"Class priors sum to {self.priors.sum()}, not 1")
        if not np.all(self.variances > 0):
            raise DataValidationError("Naive Bayes variances must be positive")

    def to_dict(self) -> Dict:
        return {
            "version": MODEL_VERSION,
            "kind": "gaussian_nb",
            "classes": list(self.classes),
            "priors": self.priors.tolist(),
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
            "var_smoothing": self.var_smoothing,
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "GnbModel":
        check_version(payload, "gaussian_nb")
        return cls(
            classes=tuple(payload["classes"]),
            priors=np.asarray(payload["priors"], dtype=float),
            means=np.asarray(payload["means"], dtype=float).reshape(len(payload["classes"]), -1),
            variances=np.asarray(payload["variances"], dtype=float).reshape(len(payload["classes"]), -1),
            var_smoothing=float(payload["var_smoothing"]),
        )


def gnb_fit(
    features,
    labels: Sequence[str],
    var_smoothing: float = DEFAULT_VAR_SMOOTHING,
    classes: Optional[Sequence[str]] = None,
) -> GnbModel:
    """
    Per-class priors, feature means and variances.

    ``var_smoothing`` times the largest feature variance is added to every
    variance. Every class must have at least one sample.
    """
    classes, y = encode_labels(labels, classes)
    x = check_rows(features, len(y))
    counts = np.bincount(y, minlength=len(classes))
    empty = [label for label, count in zip(classes, counts) if count == 0]
    if empty:
        raise DataValidationError(f"Classes {empty} have no training samples")

    epsilon = var_smoothing * float(x.var(axis=0).max()) if x.shape[1] else 0.0
    if epsilon <= 0.0:
        epsilon = var_smoothing
    means = np.vstack([x[y == k].mean(axis=0) for k in range(len(classes))])
    variances = np.vstack([x[y == k].var(axis=0) for k in range(len(classes))]) + epsilon
    return GnbModel(
        classes=classes,
        priors=counts / counts.sum(),
        means=means,
        variances=variances,
        var_smoothing=var_smoothing,
    )


def gnb_log_posteriors(model: GnbModel, rows) -> np.ndarray:
    """Unnormalized log posterior per (row, class)."""
    x = check_rows(rows, width=model.means.shape[1])
    log_norm = -0.5 * np.log(2.0 * np.pi * model.variances).sum(axis=1)
    diff = x[:, None, :] - model.means[None, :, :]
    log_likelihood = log_norm[None, :] - 0.5 * (diff * diff / model.variances[None, :, :]).sum(axis=2)
    return log_likelihood + np.log(model.priors)[None, :]


def gnb_predict(model: GnbModel, rows) -> List[str]:
    """Highest-posterior class per row; ties go to the class listed first."""
    best = np.argmax(gnb_log_posteriors(model, rows), axis=1)
    return [model.classes[i] for i in best]
