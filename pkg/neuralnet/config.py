"""
Network hyperparameters, the two published presets and hidden-layer sizing
helpers.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from config.errors import DataValidationError
from config.settings import settings
from neuralnet.activations import ActivationKind

logger = logging.getLogger(__name__)

# Post-reduction input width of the published model.
PUBLISHED_MODEL_INPUTS = 71
PUBLISHED_BATCH_GRID: Tuple[int, ...] = (16, 32, 64, 96)
PUBLISHED_EPOCH_GRID: Tuple[int, ...] = (25, 50, 100, 120)


class LossKind(str, Enum):
    MAE = "MAE"
    LOG_LOSS = "LogLoss"


class Preset(str, Enum):
    FINAL = "final"
    ORIGINAL = "original"


@dataclass(frozen=True)
class AdamConstants:
    learning_rate: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    def __post_init__(self) -> None:
        if not (math.isfinite(self.learning_rate) and self.learning_rate >= 0):
            raise DataValidationError(f"learning_rate must be finite and >= 0, got {self.learning_rate}")
        for name in ("beta1", "beta2"):
            value = getattr(self, name)
            if not 0.0 <= value < 1.0:
                raise DataValidationError(f"{name} must lie in [0, 1), got {value}")
        if not self.epsilon > 0:
            raise DataValidationError(f"epsilon must be > 0, got {self.epsilon}")


@dataclass(frozen=True)
class MlpConfig:
    """
    Architecture and training constants of one network.

    ``activations`` has one entry per non-input layer; dropout applies to
    hidden layers only.
    """

    layer_sizes: Tuple[int, ...]
    activations: Tuple[ActivationKind, ...]
    dropout_rate: float = 0.0
    loss: LossKind = LossKind.MAE
    adam: AdamConstants = field(default_factory=AdamConstants)
    batch_size: int = 96
    epochs: int = 120
    seed: int = field(default_factory=lambda: settings.default_seed)

    def __post_init__(self) -> None:
        object.__setattr__(self, "layer_sizes", tuple(int(s) for s in self.layer_sizes))
        object.__setattr__(self, "activations", tuple(ActivationKind(a) for a in self.activations))
        object.__setattr__(self, "loss", LossKind(self.loss))

        if len(self.layer_sizes) < 2:
            raise DataValidationError(f"Need an input and an output layer, got {list(self.layer_sizes)}")
        if any(size < 1 for size in self.layer_sizes):
            raise DataValidationError(f"Layer sizes must be >= 1, got {list(self.layer_sizes)}")
        if self.layer_sizes[-1] != 1:
            raise DataValidationError(f"Output layer must have exactly 1 unit, got {self.layer_sizes[-1]}")
        if len(self.activations) != len(self.layer_sizes) - 1:
            raise DataValidationError(
                f"Expected {len(self.layer_sizes) - 1} activations, got {len(self.activations)}"
            )
        if not 0.0 <= self.dropout_rate < 1.0:
            raise DataValidationError(f"dropout_rate must lie in [0, 1), got {self.dropout_rate}")
        if self.batch_size < 1:
            raise DataValidationError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.epochs < 0:
            raise DataValidationError(f"epochs must be >= 0, got {self.epochs}")
        if not 0 <= self.seed < 2**64:
            raise DataValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def input_dim(self) -> int:
        return self.layer_sizes[0]

    def with_overrides(self, **changes) -> "MlpConfig":
        return replace(self, **changes)

    def to_dict(self) -> Dict:
        return {
            "layer_sizes": list(self.layer_sizes),
            "activations": [a.value for a in self.activations],
            "dropout_rate": self.dropout_rate,
            "loss": self.loss.value,
            "adam": {
                "learning_rate": self.adam.learning_rate,
                "beta1": self.adam.beta1,
                "beta2": self.adam.beta2,
                "epsilon": self.adam.epsilon,
            },
            "batch_size": self.batch_size,
            "epochs": self.epochs,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "MlpConfig":
        return cls(
            layer_sizes=tuple(payload["layer_sizes"]),
            activations=tuple(payload["activations"]),
            dropout_rate=float(payload.get("dropout_rate", 0.0)),
            loss=LossKind(payload.get("loss", LossKind.MAE.value)),
            adam=AdamConstants(**payload.get("adam", {})),
            batch_size=int(payload.get("batch_size", 96)),
            epochs=int(payload.get("epochs", 120)),
            seed=int(payload.get("seed", settings.default_seed)),
        )


def rule_of_thumb_hidden_sizes(input_dim: int, outputs: int = 1) -> Tuple[int, int]:
    """Hidden sizes from "outputs plus two thirds of the previous layer"."""
    h1 = outputs + round(2 * input_dim / 3)
    h2 = outputs + round(2 * h1 / 3)
    return max(h1, 1), max(h2, 1)


def check_rules_of_thumb(layer_sizes: Sequence[int]) -> List[str]:
    """
    Warn about hidden layers that break the sizing rules of thumb.

    A hidden layer must stay below twice the size of the layer before it;
    the second hidden layer must not exceed the first. Returns the messages
    it logged.
    """
    sizes = list(layer_sizes)
    messages: List[str] = []
    for i in range(1, len(sizes) - 1):
        if sizes[i] >= 2 * sizes[i - 1]:
            messages.append(
                f"Hidden layer {i} has {sizes[i]} units, at least twice the {sizes[i - 1]} units before it"
            )
    if len(sizes) >= 4 and not 1 <= sizes[2] <= sizes[1]:
        messages.append(f"Second hidden layer has {sizes[2]} units, outside [1, {sizes[1]}]")
    for message in messages:
        logger.warning(message)
    return messages


def default_architecture(input_dim: int, preset: Preset = Preset.FINAL, seed: Optional[int] = None) -> MlpConfig:
    """
    ``[input_dim, 100, 50, 1]`` with the chosen preset.

    final: Relu/Tanh/Sigmoid, dropout 0.25, MAE.
    original: Relu/Relu/Relu, no dropout, LogLoss.
    Both train with batch 96 for 120 epochs.
    """
    if input_dim < 1:
        raise DataValidationError(f"input_dim must be >= 1, got {input_dim}")
    preset = Preset(preset)
    layer_sizes = (input_dim, 100, 50, 1)
    check_rules_of_thumb(layer_sizes)
    seed = settings.default_seed if seed is None else seed

    if preset is Preset.ORIGINAL:
        return MlpConfig(
            layer_sizes=layer_sizes,
            activations=(ActivationKind.RELU, ActivationKind.RELU, ActivationKind.RELU),
            dropout_rate=0.0,
            loss=LossKind.LOG_LOSS,
            batch_size=96,
            epochs=120,
            seed=seed,
        )
    return MlpConfig(
        layer_sizes=layer_sizes,
        activations=(ActivationKind.RELU, ActivationKind.TANH, ActivationKind.SIGMOID),
        dropout_rate=0.25,
        loss=LossKind.MAE,
        batch_size=96,
        epochs=120,
        seed=seed,
    )


def suggest_grid(input_dim: int, size: int = 4) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    Starting grids for a search: batch sizes doubling from 16, epoch counts
    starting at three times the input width and halving.
    """
    if input_dim < 1 or size < 1:
        raise DataValidationError(f"input_dim and size must be >= 1, got {input_dim}, {size}")
    batches = tuple(16 * 2**i for i in range(size))
    epochs = sorted({max(3 * input_dim // 2**i, 1) for i in range(size)})
    return batches, tuple(epochs)
