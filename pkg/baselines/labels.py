"""
Label bookkeeping shared by the baseline classifiers.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

import numpy as np

from config.errors import DataValidationError

MODEL_VERSION = 1


def encode_labels(
    labels: Sequence[str],
    classes: Optional[Sequence[str]] = None,
) -> Tuple[Tuple[str, ...], np.ndarray]:
    """
    Sorted class list and each label's index into it.

    With explicit ``classes`` every label must be one of them.
    """
    labels = [str(label) for label in labels]
    ordered = tuple(sorted(set(classes))) if classes is not None else tuple(sorted(set(labels)))
    if not ordered:
        raise DataValidationError("No class labels to fit")
    position = {label: i for i, label in enumerate(ordered)}
    unknown = sorted(set(labels) - set(position))
    if unknown:
        raise DataValidationError(f"Labels {unknown} are not among the classes {list(ordered)}")
    return ordered, np.array([position[label] for label in labels], dtype=int)


def check_rows(features, n_labels: Optional[int] = None, width: Optional[int] = None) -> np.ndarray:
    x = np.asarray(features, dtype=float)
    if x.ndim != 2:
        raise DataValidationError(f"Expected a 2-D feature matrix, got shape {x.shape}")
    if n_labels is not None and len(x) != n_labels:
        raise DataValidationError(f"{len(x)} rows but {n_labels} labels")
    if width is not None and x.shape[1] != width:
        raise DataValidationError(f"Rows have {x.shape[1]} columns, the model was fit on {width}")
    if not np.isfinite(x).all():
        raise DataValidationError("Feature matrix holds non-finite values")
    return x


def check_version(payload, kind: str) -> None:
    if payload.get("version") != MODEL_VERSION or payload.get("kind") != kind:
        raise DataValidationError(
            f"Expected a version {MODEL_VERSION} {kind!r} model, got {payload.get('kind')!r} "
            f"version {payload.get('version')!r}"
        )
