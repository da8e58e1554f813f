"""
Layer activations and their derivatives.
"""

from __future__ import annotations

from enum import Enum
from typing import Union

import numpy as np

ArrayOrFloat = Union[float, np.ndarray]


class ActivationKind(str, Enum):
    RELU = "Relu"
    TANH = "Tanh"
    SIGMOID = "Sigmoid"


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    positive = x >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-x[positive]))
    e = np.exp(x[~positive])
    out[~positive] = e / (1.0 + e)
    return out


def apply_activation(kind: ActivationKind, x: ArrayOrFloat) -> ArrayOrFloat:
    """
    Evaluate ``kind`` elementwise.

    Scalars come back as Python floats, arrays as float arrays of the same shape.
    """
    kind = ActivationKind(kind)
    values = np.asarray(x, dtype=float)
    scalar = values.ndim == 0
    values = np.atleast_1d(values)

    if kind is ActivationKind.RELU:
        out = np.maximum(values, 0.0)
    elif kind is ActivationKind.TANH:
        out = np.tanh(values)
    else:
        out = _sigmoid(values)
    return float(out[0]) if scalar else out


def activation_derivative(kind: ActivationKind, z: np.ndarray, a: np.ndarray) -> np.ndarray:
    """
    d activation / d z, given the pre-activation ``z`` and the output ``a``.

    Relu's derivative at exactly 0 is 0.
    """
    kind = ActivationKind(kind)
    if kind is ActivationKind.RELU:
        return (z > 0).astype(float)
    if kind is ActivationKind.TANH:
        return 1.0 - a * a
    return a * (1.0 - a)
