"""
Fixed artifact layout under a run's output directory.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

from config.errors import MissingArtifactError

FEATURE_SETS: Tuple[str, ...] = ("select", "full")


@dataclass(frozen=True)
class ArtifactLayout:
    """
    ``root/``
        ``context/``     synthetic indicator CSVs (``synth --context``)
        ``ingest/``      profiles.json, exclusions.json
        ``synth/``       aggregates.csv, ground_truth.csv, plan_catalog.json, synth_config.json
        ``preprocess/``  matrix.csv + matrix.meta.json
        ``features/``    reduction_report.json, heatmap.csv, scatter.csv, scatter_summary.csv
        ``grid/``        trials.csv, best_config.json
        ``models/``      one JSON per model and feature set, ANN training histories
        ``evaluation/``  metrics.json
        ``report/``      the emitted bundle and its manifest
    """

    root: Path

    @property
    def context_dir(self) -> Path:
        return self.root / "context"

    @property
    def profiles(self) -> Path:
        return self.root / "ingest" / "profiles.json"

    @property
    def exclusions(self) -> Path:
        return self.root / "ingest" / "exclusions.json"

    @property
    def aggregates(self) -> Path:
        return self.root / "synth" / "aggregates.csv"

    @property
    def ground_truth(self) -> Path:
        return self.root / "synth" / "ground_truth.csv"

    @property
    def catalog(self) -> Path:
        return self.root / "synth" / "plan_catalog.json"

    @property
    def synth_config(self) -> Path:
        return self.root / "synth" / "synth_config.json"

    @property
    def matrix(self) -> Path:
        return self.root / "preprocess" / "matrix.csv"

    @property
    def reduction_report(self) -> Path:
        return self.root / "features" / "reduction_report.json"

    @property
    def heatmap(self) -> Path:
        return self.root / "features" / "heatmap.csv"

    @property
    def scatter(self) -> Path:
        return self.root / "features" / "scatter.csv"

    @property
    def scatter_summary(self) -> Path:
        return self.root / "features" / "scatter_summary.csv"

    @property
    def trials(self) -> Path:
        return self.root / "grid" / "trials.csv"

    @property
    def best_config(self) -> Path:
        return self.root / "grid" / "best_config.json"

    @property
    def models_dir(self) -> Path:
        return self.root / "models"

    def model(self, slug: str, features: str) -> Path:
        return self.models_dir / f"{slug}_{features}.json"

    def history(self, slug: str, features: str) -> Path:
        return self.models_dir / f"{slug}_{features}_history.csv"

    @property
    def metrics(self) -> Path:
        return self.root / "evaluation" / "metrics.json"

    @property
    def comparison_csv(self) -> Path:
        return self.root / "evaluation" / "comparison.csv"

    @property
    def comparison_text(self) -> Path:
        return self.root / "evaluation" / "comparison.txt"

    @property
    def report_dir(self) -> Path:
        return self.root / "report"

    @property
    def manifest(self) -> Path:
        return self.report_dir / "manifest.json"

    def require(self, path: Path, stage: str) -> Path:
        """Return ``path`` or raise naming the stage that writes it."""
        if not path.exists():
            raise MissingArtifactError(stage, path)
        return path
