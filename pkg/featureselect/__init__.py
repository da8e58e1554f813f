"""
Correlation structure, feature reduction, plotting exports and country similarity.
"""

from featureselect.correlation import CorrelationMatrix, correlation_matrix, pearson
from featureselect.exports import export_heatmap, read_heatmap_csv, scatter_matrix_export, write_heatmap_csv
from featureselect.reduction import (
    ReductionReport,
    load_reduction_report,
    reduce_features,
    save_reduction_report,
    select_features,
)
from featureselect.similarity import euclidean_distance, nearest_countries, scaled_profile_vectors

__all__ = [
    "CorrelationMatrix",
    "correlation_matrix",
    "pearson",
    "export_heatmap",
    "read_heatmap_csv",
    "scatter_matrix_export",
    "write_heatmap_csv",
    "ReductionReport",
    "load_reduction_report",
    "reduce_features",
    "save_reduction_report",
    "select_features",
    "euclidean_distance",
    "nearest_countries",
    "scaled_profile_vectors",
]
