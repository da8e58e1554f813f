"""
Versioned model JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from config.errors import DataValidationError, ParseError
from neuralnet.config import MlpConfig
from neuralnet.model import MlpModel

MODEL_VERSION = 1


@dataclass(frozen=True, eq=False)
class SavedModel:
    model: MlpModel
    feature_names: Tuple[str, ...] = field(default_factory=tuple)
    scaler_ref: Optional[str] = None


def model_to_dict(
    model: MlpModel,
    feature_names: Sequence[str] = (),
    scaler_ref: Optional[str] = None,
) -> Dict:
    if feature_names and len(feature_names) != model.config.input_dim:
        raise DataValidationError(
            f"{len(feature_names)} feature names for a network with {model.config.input_dim} inputs"
        )
    return {
        "version": MODEL_VERSION,
        "kind": "mlp",
        "layer_sizes": list(model.config.layer_sizes),
        "activations": [a.value for a in model.config.activations],
        "weights": [w.tolist() for w in model.weights],
        "biases": [b.tolist() for b in model.biases],
        "trained": model.trained,
        "scaler_params": scaler_ref,
        "features": list(feature_names),
        "seed": model.config.seed,
        "config": model.config.to_dict(),
    }


def model_from_dict(payload: Mapping) -> SavedModel:
    version = payload.get("version")
    if version != MODEL_VERSION:
        raise DataValidationError(f"Unsupported model version {version!r}")
    config = MlpConfig.from_dict(payload["config"])
    weights: List[np.ndarray] = [np.asarray(w, dtype=float).reshape(len(w), -1) for w in payload["weights"]]
    biases: List[np.ndarray] = [np.asarray(b, dtype=float) for b in payload["biases"]]
    model = MlpModel(config=config, weights=tuple(weights), biases=tuple(biases), trained=bool(payload["trained"]))
    return SavedModel(
        model=model,
        feature_names=tuple(payload.get("features", ())),
        scaler_ref=payload.get("scaler_params"),
    )


def save_model(
    model: MlpModel,
    path: Union[str, Path],
    feature_names: Sequence[str] = (),
    scaler_ref: Optional[str] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump(model_to_dict(model, feature_names, scaler_ref), f)
        f.write("\n")
    return path


def load_model(path: Union[str, Path]) -> SavedModel:
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as f:
            payload = json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Invalid model JSON: {exc.msg}", path, exc.lineno) from exc
    return model_from_dict(payload)
