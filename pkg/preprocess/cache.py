"""
FeatureMatrix cache: a CSV of the frame plus a sidecar JSON of everything else.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Union

import pandas as pd

from config.errors import DataValidationError
from preprocess.encoding import OneHotCategories
from preprocess.matrix import ColumnInfo, FeatureMatrix
from preprocess.scaling import ScalerParams
from preprocess.splitting import SplitIndices

CACHE_VERSION = 1


def sidecar_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".meta.json")


@dataclass(frozen=True, eq=False)
class CachedMatrix:
    matrix: FeatureMatrix
    scaler: Optional[ScalerParams]
    split: Optional[SplitIndices]
    categories: Optional[OneHotCategories]
    seed: Optional[int]


def save_matrix(
    matrix: FeatureMatrix,
    path: Union[str, Path],
    scaler: Optional[ScalerParams] = None,
    split: Optional[SplitIndices] = None,
    categories: Optional[OneHotCategories] = None,
    seed: Optional[int] = None,
) -> Path:
    """Write ``path`` (CSV) and its ``.meta.json`` sidecar."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    matrix.frame.to_csv(path, index=False, lineterminator="\n")
    meta: Dict = {
        "version": CACHE_VERSION,
        "target_name": matrix.target_name,
        "column_kind": {name: info.to_dict() for name, info in matrix.columns.items()},
        "row_meta": {name: [str(v) for v in matrix.row_meta[name]] for name in matrix.row_meta.columns},
        "scaler_params": scaler.to_dict() if scaler is not None else None,
        "split_indices": split.to_dict() if split is not None else None,
        "categories": categories.to_dict() if categories is not None else None,
        "seed": seed,
    }
    with sidecar_path(path).open("w", encoding="utf-8") as f:
        json.dump(meta, f, indent=1)
        f.write("\n")
    return path


def load_matrix(path: Union[str, Path]) -> CachedMatrix:
    path = Path(path)
    meta_path = sidecar_path(path)
    if not path.exists() or not meta_path.exists():
        raise FileNotFoundError(f"Matrix cache incomplete: need {path} and {meta_path}")
    with meta_path.open("r", encoding="utf-8") as f:
        meta = json.load(f)
    if meta.get("version") != CACHE_VERSION:
        raise DataValidationError(f"{meta_path}: unsupported cache version {meta.get('version')}")

    columns = {name: ColumnInfo.from_dict(info) for name, info in meta["column_kind"].items()}
    categorical = [name for name, info in columns.items() if info.kind.value == "categorical"]
    frame = pd.read_csv(
        path,
        float_precision="round_trip",
        dtype={name: str for name in categorical},
        keep_default_na=False,
    )
    numeric = [name for name in columns if name not in categorical]
    frame[numeric] = frame[numeric].astype(float)
    row_meta = pd.DataFrame(meta.get("row_meta") or {})
    matrix = FeatureMatrix(frame=frame, columns=columns, target_name=meta["target_name"], row_meta=row_meta)
    return CachedMatrix(
        matrix=matrix,
        scaler=ScalerParams.from_dict(meta["scaler_params"]) if meta.get("scaler_params") else None,
        split=SplitIndices.from_dict(meta["split_indices"]) if meta.get("split_indices") else None,
        categories=OneHotCategories.from_dict(meta["categories"]) if meta.get("categories") else None,
        seed=meta.get("seed"),
    )
