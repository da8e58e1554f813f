"""
Baseline model JSON files: the model's own dict plus the feature columns it was fit on.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Sequence, Tuple, Union

from baselines.naive_bayes import GnbModel, gnb_predict
from baselines.random_forest import RandomForest, rf_predict
from baselines.sgd import SgdClassifier, sgd_predict
from config.errors import DataValidationError, ParseError

BaselineModel = Union[GnbModel, SgdClassifier, RandomForest]

_LOADERS: Dict[str, Callable[[Mapping], BaselineModel]] = {
    "gaussian_nb": GnbModel.from_dict,
    "sgd_logistic": SgdClassifier.from_dict,
    "random_forest": RandomForest.from_dict,
}


def save_baseline(model: BaselineModel, path: Union[str, Path], feature_names: Sequence[str] = ()) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = model.to_dict()
    payload["features"] = list(feature_names)
    with path.open("w", encoding="utf-8") as f:
        json.dump(payload, f)
        f.write("\n")
    return path


def load_baseline(path: Union[str, Path]) -> Tuple[BaselineModel, Tuple[str, ...]]:
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as f:
            payload = json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Invalid model JSON: {exc.msg}", path, exc.lineno) from exc
    kind = payload.get("kind")
    if kind not in _LOADERS:
        raise DataValidationError(f"{path}: unknown baseline kind {kind!r}")
    return _LOADERS[kind](payload), tuple(payload.get("features", ()))


def baseline_predict(model: BaselineModel, rows) -> List[str]:
    """Dispatch to the predict function of the model's kind."""
    if isinstance(model, GnbModel):
        return gnb_predict(model, rows)
    if isinstance(model, SgdClassifier):
        return sgd_predict(model, rows)
    if isinstance(model, RandomForest):
        return rf_predict(model, rows)
    raise DataValidationError(f"Not a baseline model: {type(model).__name__}")
