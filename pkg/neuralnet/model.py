"""
The multilayer perceptron: parameters, initialization, forward and backward
passes.

Weights are stored out x in, so a layer computes ``z = a @ W.T + b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.errors import DataValidationError
from neuralnet.activations import ActivationKind, activation_derivative, apply_activation
from neuralnet.config import MlpConfig
from neuralnet.losses import loss_gradient


class Mode(str, Enum):
    TRAIN = "train"
    INFER = "infer"


def rng_streams(seed: int) -> Tuple[np.random.Generator, np.random.Generator, np.random.Generator]:
    """Independent init, shuffle and dropout generators derived from one seed."""
    init, shuffle, dropout = np.random.SeedSequence(seed).spawn(3)
    return np.random.default_rng(init), np.random.default_rng(shuffle), np.random.default_rng(dropout)


@dataclass(frozen=True, eq=False)
class MlpModel:
    config: MlpConfig
    weights: Tuple[np.ndarray, ...]
    biases: Tuple[np.ndarray, ...]
    trained: bool = False

    def __post_init__(self) -> None:
        sizes = self.config.layer_sizes
        if len(self.weights) != len(sizes) - 1 or len(self.biases) != len(sizes) - 1:
            raise DataValidationError(f"Expected {len(sizes) - 1} layers of parameters")
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape != (sizes[i + 1], sizes[i]) or b.shape != (sizes[i + 1],):
                raise DataValidationError(
                    f"Layer {i} has weights {w.shape} and biases {b.shape}, "
                    f"expected {(sizes[i + 1], sizes[i])} and {(sizes[i + 1],)}"
                )
            if not (np.isfinite(w).all() and np.isfinite(b).all()):
                raise DataValidationError(f"Layer {i} has non-finite parameters")

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    def parameters(self) -> List[np.ndarray]:
        """Flat ``[W0, b0, W1, b1, ...]`` view used by the optimizer."""
        params: List[np.ndarray] = []
        for w, b in zip(self.weights, self.biases):
            params.extend((w, b))
        return params

    def with_parameters(self, params: Sequence[np.ndarray], trained: Optional[bool] = None) -> "MlpModel":
        return replace(
            self,
            weights=tuple(np.asarray(p, dtype=float) for p in params[0::2]),
            biases=tuple(np.asarray(p, dtype=float) for p in params[1::2]),
            trained=self.trained if trained is None else trained,
        )

    def equals(self, other: "MlpModel") -> bool:
        return (
            self.config == other.config
            and self.trained == other.trained
            and all(np.array_equal(a, b) for a, b in zip(self.parameters(), other.parameters()))
        )


def init_model(config: MlpConfig, rng: Optional[np.random.Generator] = None) -> MlpModel:
    """
    Uniform init: +-sqrt(6 / fan_in) for Relu layers, +-sqrt(6 / (fan_in + fan_out))
    otherwise; biases start at zero. Depends only on the seed and layer shapes.
    """
    rng = rng or rng_streams(config.seed)[0]
    weights, biases = [], []
    for fan_in, fan_out, activation in zip(config.layer_sizes[:-1], config.layer_sizes[1:], config.activations):
        if activation is ActivationKind.RELU:
            bound = math.sqrt(6.0 / fan_in)
        else:
            bound = math.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MlpModel(config=config, weights=tuple(weights), biases=tuple(biases))


@dataclass(frozen=True, eq=False)
class LayerCache:
    inputs: np.ndarray
    pre: np.ndarray
    post: np.ndarray
    # Inverted-dropout multipliers (0 or 1/(1-p)) applied to ``post``; None when off.
    mask: Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class ForwardCache:
    layers: Tuple[LayerCache, ...]

    @property
    def predictions(self) -> np.ndarray:
        return self.layers[-1].post[:, 0]


def _as_batch(model: MlpModel, batch) -> np.ndarray:
    x = np.asarray(batch, dtype=float)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    if x.ndim != 2 or x.shape[1] != model.config.input_dim:
        raise DataValidationError(
            f"Batch has shape {x.shape}, the network expects {model.config.input_dim} columns"
        )
    return x


def forward(
    model: MlpModel,
    batch,
    mode: Mode = Mode.INFER,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[np.ndarray, ForwardCache]:
    """
    Run a batch through the network.

    Train mode drops hidden units with probability ``dropout_rate`` and scales
    the survivors by ``1 / (1 - p)``; the output layer is never dropped.
    """
    mode = Mode(mode)
    p = model.config.dropout_rate
    use_dropout = mode is Mode.TRAIN and p > 0.0
    if use_dropout and rng is None:
        raise DataValidationError("Train mode with dropout needs a random generator")

    a = _as_batch(model, batch)
    layers: List[LayerCache] = []
    last = model.n_layers - 1
    for i, (w, b, activation) in enumerate(zip(model.weights, model.biases, model.config.activations)):
        z = a @ w.T + b
        post = apply_activation(activation, z)
        mask = None
        if use_dropout and i < last:
            mask = (rng.random(post.shape) >= p) / (1.0 - p)
        layers.append(LayerCache(inputs=a, pre=z, post=post, mask=mask))
        a = post * mask if mask is not None else post

    cache = ForwardCache(layers=tuple(layers))
    return cache.predictions.copy(), cache


def backward(model: MlpModel, cache: ForwardCache, targets) -> List[np.ndarray]:
    """Gradients of the configured loss, in the order of ``model.parameters()``."""
    grad_a = loss_gradient(model.config.loss, cache.predictions, targets).reshape(-1, 1)
    grads: List[np.ndarray] = [np.empty(0)] * (2 * model.n_layers)
    for i in reversed(range(model.n_layers)):
        layer = cache.layers[i]
        if layer.mask is not None:
            grad_a = grad_a * layer.mask
        delta = grad_a * activation_derivative(model.config.activations[i], layer.pre, layer.post)
        grads[2 * i] = delta.T @ layer.inputs
        grads[2 * i + 1] = delta.sum(axis=0)
        grad_a = delta @ model.weights[i]
    return grads
