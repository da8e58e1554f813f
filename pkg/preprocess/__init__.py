"""
Base matrix construction, outlier removal, scaling, one-hot encoding and splitting.
"""

from preprocess.build import TARGET_COLUMN, build_base_matrix
from preprocess.cache import load_matrix, save_matrix
from preprocess.encoding import OneHotCategories, fit_categories, one_hot_encode
from preprocess.matrix import ColumnInfo, ColumnKind, ColumnSource, FeatureMatrix, count_model_inputs
from preprocess.outliers import remove_outliers
from preprocess.prepare import PreparedData, PreprocessOptions, prepare_features
from preprocess.scaling import ScalerParams, apply_scaler, minmax_scale, standardize
from preprocess.splitting import SplitIndices, split

__all__ = [
    "TARGET_COLUMN",
    "build_base_matrix",
    "load_matrix",
    "save_matrix",
    "OneHotCategories",
    "fit_categories",
    "one_hot_encode",
    "ColumnInfo",
    "ColumnKind",
    "ColumnSource",
    "FeatureMatrix",
    "count_model_inputs",
    "remove_outliers",
    "PreparedData",
    "PreprocessOptions",
    "prepare_features",
    "ScalerParams",
    "apply_scaler",
    "minmax_scale",
    "standardize",
    "SplitIndices",
    "split",
]
