"""
One-vs-rest logistic regression trained by per-sample stochastic gradient
descent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from baselines.labels import MODEL_VERSION, check_rows, check_version, encode_labels
from config.errors import DataValidationError, DivergenceError
from config.settings import settings
from neuralnet.activations import ActivationKind, apply_activation

DEFAULT_LEARNING_RATE = 0.01
DEFAULT_EPOCHS = 100


@dataclass(frozen=True, eq=False)
class SgdClassifier:
    classes: Tuple[str, ...]
    weights: np.ndarray
    biases: np.ndarray
    learning_rate: float = DEFAULT_LEARNING_RATE
    epochs: int = DEFAULT_EPOCHS
    seed: int = field(default_factory=lambda: settings.default_seed)

    def __post_init__(self) -> None:
        if self.weights.shape[0] != len(self.classes) or self.biases.shape != (len(self.classes),):
            raise DataValidationError("SGD parameters do not match the class list")
        if not (np.isfinite(self.weights).all() and np.isfinite(self.biases).all()):
            raise DataValidationError("SGD parameters must be finite")

    def to_dict(self) -> Dict:
        return {
            "version": MODEL_VERSION,
            "kind": "sgd_logistic",
            "classes": list(self.classes),
            "weights": self.weights.tolist(),
            "biases": self.biases.tolist(),
            "learning_rate": self.learning_rate,
            "epochs": self.epochs,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "SgdClassifier":
        check_version(payload, "sgd_logistic")
        return cls(
            classes=tuple(payload["classes"]),
            weights=np.asarray(payload["weights"], dtype=float).reshape(len(payload["classes"]), -1),
            biases=np.asarray(payload["biases"], dtype=float),
            learning_rate=float(payload["learning_rate"]),
            epochs=int(payload["epochs"]),
            seed=int(payload["seed"]),
        )


def sgd_fit(
    features,
    labels: Sequence[str],
    learning_rate: float = DEFAULT_LEARNING_RATE,
    epochs: int = DEFAULT_EPOCHS,
    seed: Optional[int] = None,
    classes: Optional[Sequence[str]] = None,
) -> SgdClassifier:
    """
    Fit one logistic unit per class, starting from zero weights.

    Every epoch visits the rows once in a seeded random order and takes one
    log-loss gradient step per row for all class units at once.

    Raises:
        DivergenceError: a parameter became non-finite.
    """
    if epochs < 1:
        raise DataValidationError(f"epochs must be >= 1, got {epochs}")
    if not (np.isfinite(learning_rate) and learning_rate >= 0):
        raise DataValidationError(f"learning_rate must be finite and >= 0, got {learning_rate}")
    seed = settings.default_seed if seed is None else seed
    classes, y = encode_labels(labels, classes)
    x = check_rows(features, len(y))
    targets = np.eye(len(classes))[y]

    weights = np.zeros((len(classes), x.shape[1]))
    biases = np.zeros(len(classes))
    rng = np.random.default_rng(seed)
    for epoch in range(1, epochs + 1):
        for i in rng.permutation(len(x)):
            error = apply_activation(ActivationKind.SIGMOID, weights @ x[i] + biases) - targets[i]
            weights -= learning_rate * np.outer(error, x[i])
            biases -= learning_rate * error
        if not (np.isfinite(weights).all() and np.isfinite(biases).all()):
            raise DivergenceError("SGD parameters became non-finite", epoch=epoch)

    return SgdClassifier(
        classes=classes,
        weights=weights,
        biases=biases,
        learning_rate=learning_rate,
        epochs=epochs,
        seed=seed,
    )


def sgd_decision(model: SgdClassifier, rows) -> np.ndarray:
    x = check_rows(rows, width=model.weights.shape[1])
    return x @ model.weights.T + model.biases


def sgd_predict(model: SgdClassifier, rows) -> List[str]:
    """Class whose unit scores highest; ties go to the class listed first."""
    best = np.argmax(sgd_decision(model, rows), axis=1)
    return [model.classes[i] for i in best]
