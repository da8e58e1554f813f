"""
Model comparison tables as aligned text and CSV.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Tuple, Union

import pandas as pd

from config.errors import DataValidationError
from evaluation.metrics import MetricsReport

COMPARISON_COLUMNS = ("model", "features", "accuracy", "f1", "precision", "recall")
METRIC_COLUMNS = COMPARISON_COLUMNS[2:]


@dataclass(frozen=True)
class ModelRun:
    model: str
    features: str
    report: MetricsReport


RunLike = Union[ModelRun, Tuple[str, MetricsReport], Tuple[str, str, MetricsReport]]


def _as_run(run: RunLike) -> ModelRun:
    if isinstance(run, ModelRun):
        return run
    if len(run) == 2:
        return ModelRun(model=run[0], features="", report=run[1])
    return ModelRun(model=run[0], features=run[1], report=run[2])


def compare_models(runs: Iterable[RunLike]) -> pd.DataFrame:
    """One row per run, highest accuracy first; equal accuracies keep input order."""
    runs = [_as_run(run) for run in runs]
    if not runs:
        raise DataValidationError("Nothing to compare: no model runs")
    frame = pd.DataFrame(
        [
            (r.model, r.features, r.report.accuracy, r.report.f1, r.report.precision, r.report.recall)
            for r in runs
        ],
        columns=list(COMPARISON_COLUMNS),
    )
    return frame.sort_values("accuracy", ascending=False, kind="mergesort").reset_index(drop=True)


def format_comparison(table: pd.DataFrame, digits: int = 4) -> str:
    """Fixed-width text table with metrics to ``digits`` decimals."""
    header = [name.capitalize() if name != "f1" else "F1" for name in COMPARISON_COLUMNS]
    rows: List[List[str]] = [
        [str(row["model"]), str(row["features"])] + [f"{row[m]:.{digits}f}" for m in METRIC_COLUMNS]
        for _, row in table.iterrows()
    ]
    widths = [max(len(cell) for cell in column) for column in zip(header, *rows)]
    lines = []
    for i, cells in enumerate([header] + rows):
        padded = [
            cell.ljust(width) if j < 2 else cell.rjust(width) for j, (cell, width) in enumerate(zip(cells, widths))
        ]
        lines.append("  ".join(padded).rstrip())
        if i == 0:
            lines.append("  ".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"


def write_comparison(
    table: pd.DataFrame, csv_path: Union[str, Path], text_path: Union[str, Path]
) -> Tuple[Path, Path]:
    csv_path, text_path = Path(csv_path), Path(text_path)
    for path in (csv_path, text_path):
        path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(csv_path, index=False, lineterminator="\n")
    text_path.write_text(format_comparison(table), encoding="utf-8")
    return csv_path, text_path


def read_comparison_csv(path: Union[str, Path]) -> pd.DataFrame:
    frame = pd.read_csv(path, float_precision="round_trip", keep_default_na=False)
    if list(frame.columns) != list(COMPARISON_COLUMNS):
        raise DataValidationError(f"{path}: expected columns {list(COMPARISON_COLUMNS)}, got {list(frame.columns)}")
    return frame
