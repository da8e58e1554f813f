"""
Tabular exports for external plotting: correlation heatmap and cultural scatter matrix.
"""

from __future__ import annotations

import itertools
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np
import pandas as pd

from config.errors import DataValidationError
from featureselect.correlation import CorrelationMatrix, pearson
from ingest.models import CULTURAL_FIELDS, CountryProfile

HEATMAP_COLUMNS = ("name_i", "name_j", "r")
SCATTER_COLUMNS = ("country",) + CULTURAL_FIELDS
SCATTER_SUMMARY_COLUMNS = ("index_i", "index_j", "r")


def export_heatmap(corr: CorrelationMatrix) -> pd.DataFrame:
    """Long-format (name_i, name_j, r) rows covering all n x n cells."""
    rows = [
        (a, b, float(corr.r[i, j]))
        for i, a in enumerate(corr.names)
        for j, b in enumerate(corr.names)
    ]
    return pd.DataFrame(rows, columns=list(HEATMAP_COLUMNS))


def write_heatmap_csv(corr: CorrelationMatrix, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    export_heatmap(corr).to_csv(path, index=False, lineterminator="\n")
    return path


def read_heatmap_csv(path: Union[str, Path]) -> CorrelationMatrix:
    frame = pd.read_csv(path, float_precision="round_trip", keep_default_na=False, dtype={"name_i": str, "name_j": str})
    names = list(dict.fromkeys(frame["name_i"]))
    position = {name: i for i, name in enumerate(names)}
    r = np.zeros((len(names), len(names)))
    for a, b, value in zip(frame["name_i"], frame["name_j"], frame["r"]):
        r[position[a], position[b]] = float(value)
    constant = frozenset(name for name in names if r[position[name], position[name]] == 0.0)
    return CorrelationMatrix(names=names, r=r, constant=constant)


def scatter_matrix_export(profiles: Sequence[CountryProfile]) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """
    Country x cultural-index table plus Pearson r for each of the 15 index pairs.

    Returns:
        (scatter, summary) frames.
    """
    if len(profiles) < 2:
        raise DataValidationError(f"Scatter export needs at least 2 profiles, got {len(profiles)}")
    codes = [profile.country for profile in profiles]
    duplicates = sorted({code for code in codes if codes.count(code) > 1})
    if duplicates:
        raise DataValidationError(f"Duplicate countries in scatter export: {duplicates}")

    ordered = sorted(profiles, key=lambda p: p.country)
    scatter = pd.DataFrame(
        [[p.country] + p.culture.values() for p in ordered], columns=list(SCATTER_COLUMNS)
    )
    summary = pd.DataFrame(
        [
            (a, b, pearson(scatter[a].to_numpy(), scatter[b].to_numpy()))
            for a, b in itertools.combinations(CULTURAL_FIELDS, 2)
        ],
        columns=list(SCATTER_SUMMARY_COLUMNS),
    )
    return scatter, summary


def write_scatter_exports(
    profiles: Sequence[CountryProfile], scatter_path: Union[str, Path], summary_path: Union[str, Path]
) -> Tuple[Path, Path]:
    scatter, summary = scatter_matrix_export(profiles)
    paths = []
    for frame, path in ((scatter, scatter_path), (summary, summary_path)):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, lineterminator="\n")
        paths.append(path)
    return paths[0], paths[1]
