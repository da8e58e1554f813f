"""
Price-to-plan bridge, confusion counts, metrics and comparison tables.
"""

from evaluation.bridge import PlanAccuracyScorer, price_to_class, prices_to_classes
from evaluation.comparison import ModelRun, compare_models, format_comparison, read_comparison_csv, write_comparison
from evaluation.metrics import (
    Averaging,
    ClassCounts,
    ConfusionCounts,
    MetricsReport,
    confusion,
    evaluate_predictions,
    f1_from_counts,
    f1_from_rates,
    metrics,
)
from evaluation.reference import PUBLISHED_REFERENCE_RUNS, published_reference_table

__all__ = [
    "PlanAccuracyScorer",
    "price_to_class",
    "prices_to_classes",
    "ModelRun",
    "compare_models",
    "format_comparison",
    "read_comparison_csv",
    "write_comparison",
    "Averaging",
    "ClassCounts",
    "ConfusionCounts",
    "MetricsReport",
    "confusion",
    "evaluate_predictions",
    "f1_from_counts",
    "f1_from_rates",
    "metrics",
    "PUBLISHED_REFERENCE_RUNS",
    "published_reference_table",
]
