"""
Adam optimizer as a pure update: state in, state out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from config.errors import DataValidationError
from neuralnet.config import AdamConstants


@dataclass(frozen=True, eq=False)
class AdamState:
    """First and second moment per parameter tensor, plus the step count."""

    m: Tuple[np.ndarray, ...]
    v: Tuple[np.ndarray, ...]
    t: int = 0

    @classmethod
    def zeros(cls, params: Sequence[np.ndarray]) -> "AdamState":
        return cls(
            m=tuple(np.zeros_like(p, dtype=float) for p in params),
            v=tuple(np.zeros_like(p, dtype=float) for p in params),
            t=0,
        )


def adam_step(
    params: Sequence[np.ndarray],
    grads: Sequence[np.ndarray],
    state: AdamState,
    constants: AdamConstants,
) -> Tuple[List[np.ndarray], AdamState]:
    """
    One bias-corrected Adam update.

    m <- b1 m + (1 - b1) g
    v <- b2 v + (1 - b2) g^2
    theta <- theta - lr * m_hat / (sqrt(v_hat) + eps)

    Inputs are not modified.
    """
    if not (len(params) == len(grads) == len(state.m) == len(state.v)):
        raise DataValidationError("Parameters, gradients and optimizer state disagree in length")
    t = state.t + 1
    b1, b2 = constants.beta1, constants.beta2
    correction1 = 1.0 - b1**t
    correction2 = 1.0 - b2**t

    new_params: List[np.ndarray] = []
    new_m: List[np.ndarray] = []
    new_v: List[np.ndarray] = []
    for theta, g, m, v in zip(params, grads, state.m, state.v):
        if np.shape(theta) != np.shape(g):
            raise DataValidationError(f"Gradient shape {np.shape(g)} does not match parameter {np.shape(theta)}")
        m = b1 * m + (1.0 - b1) * g
        v = b2 * v + (1.0 - b2) * (g * g)
        m_hat = m / correction1
        v_hat = v / correction2
        new_params.append(theta - constants.learning_rate * m_hat / (np.sqrt(v_hat) + constants.epsilon))
        new_m.append(m)
        new_v.append(v)
    return new_params, AdamState(m=tuple(new_m), v=tuple(new_v), t=t)
