"""
From-scratch feedforward network: activations, presets, forward/backward
passes, Adam, mini-batch training, grid search and model files.
"""

from neuralnet.activations import ActivationKind, activation_derivative, apply_activation
from neuralnet.adam import AdamState, adam_step
from neuralnet.config import (
    PUBLISHED_BATCH_GRID,
    PUBLISHED_EPOCH_GRID,
    PUBLISHED_MODEL_INPUTS,
    AdamConstants,
    LossKind,
    MlpConfig,
    Preset,
    check_rules_of_thumb,
    default_architecture,
    rule_of_thumb_hidden_sizes,
    suggest_grid,
)
from neuralnet.grid_search import GridResult, GridTrial, grid_search, read_trial_table, write_trial_table
from neuralnet.losses import loss, loss_gradient
from neuralnet.model import MlpModel, Mode, backward, forward, init_model
from neuralnet.serialization import SavedModel, load_model, save_model
from neuralnet.training import EpochRecord, predict, read_history_csv, train, train_arrays, write_history_csv

__all__ = [
    "ActivationKind",
    "activation_derivative",
    "apply_activation",
    "AdamState",
    "adam_step",
    "PUBLISHED_BATCH_GRID",
    "PUBLISHED_EPOCH_GRID",
    "PUBLISHED_MODEL_INPUTS",
    "AdamConstants",
    "LossKind",
    "MlpConfig",
    "Preset",
    "check_rules_of_thumb",
    "default_architecture",
    "rule_of_thumb_hidden_sizes",
    "suggest_grid",
    "GridResult",
    "GridTrial",
    "grid_search",
    "read_trial_table",
    "write_trial_table",
    "loss",
    "loss_gradient",
    "MlpModel",
    "Mode",
    "backward",
    "forward",
    "init_model",
    "SavedModel",
    "load_model",
    "save_model",
    "EpochRecord",
    "predict",
    "read_history_csv",
    "train",
    "train_arrays",
    "write_history_csv",
]
