"""
Euclidean country similarity over min-max scaled profile vectors.
"""

from __future__ import annotations

from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from config.errors import DataValidationError
from ingest.models import CountryProfile


def euclidean_distance(p: Sequence[float], q: Sequence[float]) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise DataValidationError(f"Vectors differ in length: {p.shape} vs {q.shape}")
    return float(np.sqrt(np.sum((p - q) ** 2)))


def scaled_profile_vectors(
    profiles: Sequence[CountryProfile], names: Optional[Sequence[str]] = None
) -> Dict[str, np.ndarray]:
    """Culture + indicator vectors, each feature min-max scaled across ``profiles``."""
    if not profiles:
        return {}
    names = list(names) if names is not None else profiles[0].feature_names()
    raw = np.array([profile.feature_vector(names) for profile in profiles], dtype=float)
    low = raw.min(axis=0)
    span = raw.max(axis=0) - low
    scaled = np.zeros_like(raw)
    varying = span > 0
    scaled[:, varying] = (raw[:, varying] - low[varying]) / span[varying]
    return {profile.country: scaled[i] for i, profile in enumerate(profiles)}


def nearest_from_vectors(target: str, vectors: Mapping[str, np.ndarray], k: int) -> List[Tuple[str, float]]:
    if target not in vectors:
        raise DataValidationError(f"Country {target} has no profile")
    if k < 1 or k >= len(vectors):
        raise DataValidationError(f"k must be in [1, {len(vectors) - 1}], got {k}")
    distances = [
        (code, euclidean_distance(vectors[target], vector)) for code, vector in vectors.items() if code != target
    ]
    distances.sort(key=lambda item: (item[1], item[0]))
    return distances[:k]


def nearest_countries(target: str, profiles: Sequence[CountryProfile], k: int) -> List[Tuple[str, float]]:
    """
    The ``k`` countries closest to ``target``, nearest first, ties by code.
    """
    codes = [profile.country for profile in profiles]
    if len(set(codes)) != len(codes):
        raise DataValidationError("Duplicate countries in similarity query")
    return nearest_from_vectors(target, scaled_profile_vectors(profiles), k)
