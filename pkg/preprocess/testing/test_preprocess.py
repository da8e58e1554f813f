"""
Tests for the base matrix, outlier removal, scaling, encoding, splitting and the cache.
"""

import logging
import math

import hypothesis.strategies as st
import numpy as np
import pandas as pd
import pytest
from hypothesis import given

from config.errors import DataValidationError
from preprocess.build import TARGET_COLUMN, build_base_matrix
from preprocess.cache import load_matrix, save_matrix
from preprocess.encoding import fit_categories, one_hot_encode
from preprocess.matrix import ColumnInfo, ColumnKind, ColumnSource, FeatureMatrix, count_model_inputs
from preprocess.outliers import remove_outliers
from preprocess.prepare import PreprocessOptions, prepare_features
from preprocess.scaling import ScalerParams, apply_scaler, minmax_scale, standardize
from preprocess.splitting import split
from synthgen.config import SynthConfig
from synthgen.generator import generate


def _matrix(target=None, categorical=None, **numeric):
    """Numeric domain columns plus a target ``y`` and optional categorical columns."""
    columns = {}
    data = {}
    for name, values in numeric.items():
        columns[name] = ColumnInfo(ColumnKind.NUMERIC, ColumnSource.DOMAIN)
        data[name] = np.asarray(values, dtype=float)
    for name, values in (categorical or {}).items():
        columns[name] = ColumnInfo(ColumnKind.CATEGORICAL, ColumnSource.DOMAIN)
        data[name] = list(values)
    n = len(next(iter(data.values())))
    columns["y"] = ColumnInfo(ColumnKind.NUMERIC, ColumnSource.TARGET)
    data["y"] = np.asarray(target if target is not None else np.zeros(n), dtype=float)
    return FeatureMatrix(frame=pd.DataFrame(data, columns=list(columns)), columns=columns, target_name="y")


@pytest.fixture(scope="module")
def base_matrix(sample_profiles, sample_catalog):
    config = SynthConfig(seed=11, rows=1500, countries=tuple(p.country for p in sample_profiles))
    aggregates, _ = generate(config, sample_profiles, sample_catalog)
    return build_base_matrix(aggregates, sample_profiles)


# ---------------------------------------------------------------- matrix


def test_matrix_rejects_non_finite_values():
    with pytest.raises(DataValidationError, match="Non-finite"):
        _matrix(a=[1.0, math.inf])


def test_matrix_requires_target():
    frame = pd.DataFrame({"a": [1.0]})
    with pytest.raises(DataValidationError, match="Target"):
        FeatureMatrix(frame, {"a": ColumnInfo(ColumnKind.NUMERIC, ColumnSource.DOMAIN)}, "y")


def test_base_matrix_layout(base_matrix):
    assert base_matrix.target_name == TARGET_COLUMN
    assert "n_same_day_downgrades" not in base_matrix.columns
    assert "plan_to" not in base_matrix.columns
    assert base_matrix.categorical_columns() == ["left_and_returned", "plan_from", "change_year", "change_month"]
    assert len(base_matrix.columns_from(ColumnSource.CULTURE)) == 6
    assert len(base_matrix.columns_from(ColumnSource.INDICATOR)) == 36
    assert set(base_matrix.frame["change_month"]) <= {f"{m:02d}" for m in range(1, 13)}
    assert len(base_matrix.row_meta) == base_matrix.n_rows


def test_base_matrix_rejects_unknown_country(sample_profiles, sample_catalog):
    config = SynthConfig(seed=1, rows=10, countries=("US", "JP"))
    aggregates, _ = generate(config, sample_profiles, sample_catalog)
    without_japan = [p for p in sample_profiles if p.country != "JP"]
    with pytest.raises(DataValidationError, match="JP"):
        build_base_matrix(aggregates, without_japan)


# ---------------------------------------------------------------- outliers


def test_remove_outliers_drops_far_row():
    matrix = _matrix(a=[1.0] * 20 + [100.0])
    cleaned = remove_outliers(matrix, 4.0)
    assert cleaned.n_rows == 20
    assert cleaned.frame["a"].max() == 1.0


def test_remove_outliers_infinite_threshold_is_identity():
    matrix = _matrix(a=[1.0, 1.0, 1.0, 1.0, 100.0])
    assert remove_outliers(matrix, math.inf).equals(matrix)


def test_constant_column_flags_nothing():
    matrix = _matrix(a=[3.0] * 6, b=[1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    assert remove_outliers(matrix, 2.0).n_rows == 6


def test_remove_outliers_everything_dropped():
    with pytest.raises(DataValidationError, match="every row"):
        remove_outliers(_matrix(a=[0.0, 1.0]), 0.5)


def test_remove_outliers_threshold_must_be_positive():
    with pytest.raises(DataValidationError):
        remove_outliers(_matrix(a=[0.0, 1.0]), 0.0)


# ---------------------------------------------------------------- scaling


def test_standardize_hand_values():
    scaled, params = standardize(_matrix(a=[1.0, 2.0, 3.0]), ["a"])
    assert scaled.frame["a"].tolist() == pytest.approx([-1.2247, 0.0, 1.2247], abs=1e-4)
    assert params.steps[0].low == 2.0


def test_standardize_constant_column_is_zero():
    scaled, _ = standardize(_matrix(a=[4.0, 4.0, 4.0]), ["a"])
    assert scaled.frame["a"].tolist() == [0.0, 0.0, 0.0]


@given(st.lists(st.integers(-1000, 1000).map(lambda v: v / 8), min_size=2, max_size=40))
def test_standardize_is_idempotent(values):
    once, _ = standardize(_matrix(a=values), ["a"])
    twice, _ = standardize(once, ["a"])
    np.testing.assert_allclose(twice.frame["a"], once.frame["a"], atol=1e-10)


def test_minmax_hand_values():
    scaled, _ = minmax_scale(_matrix(a=[2.0, 4.0, 6.0]), ["a"])
    assert scaled.frame["a"].tolist() == [0.0, 0.5, 1.0]


def test_minmax_degenerate_column_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="preprocess.scaling"):
        scaled, _ = minmax_scale(_matrix(a=[5.0, 5.0, 5.0]), ["a"])
    assert scaled.frame["a"].tolist() == [0.0, 0.0, 0.0]
    assert any("max == min" in record.getMessage() for record in caplog.records)


def test_minmax_log_column():
    scaled, params = minmax_scale(_matrix(a=[0.0, math.e - 1]), ["a"], log_columns=["a"])
    assert scaled.frame["a"].tolist() == pytest.approx([0.0, 1.0], abs=1e-12)
    assert params.steps[0].log_applied


def test_minmax_rejects_log_domain_violation():
    with pytest.raises(DataValidationError, match="log1p"):
        minmax_scale(_matrix(a=[-1.0, 2.0]), ["a"], log_columns=["a"])


@given(st.lists(st.floats(-1e9, 1e9), min_size=2, max_size=40), st.integers(0, 2**32 - 1))
def test_minmax_fit_rows_map_to_unit_interval(values, seed):
    rows = np.sort(np.random.default_rng(seed).choice(len(values), size=max(1, len(values) // 2), replace=False))
    scaled, params = minmax_scale(_matrix(a=values), ["a"], fit_rows=rows)
    train = scaled.frame["a"].to_numpy()[rows]
    if params.steps[0].degenerate:
        assert (train == 0.0).all()
    else:
        assert train.min() == 0.0
        assert train.max() == 1.0


def test_apply_scaler_extrapolates_without_clipping():
    _, params = minmax_scale(_matrix(a=[2.0, 6.0]), ["a"])
    applied = apply_scaler(_matrix(a=[4.0, 8.0]), params)
    assert applied.frame["a"].tolist() == [0.5, 1.5]


def test_apply_degenerate_scaler_maps_to_zero():
    _, params = minmax_scale(_matrix(a=[3.0, 3.0]), ["a"])
    assert apply_scaler(_matrix(a=[-7.0, 99.0]), params).frame["a"].tolist() == [0.0, 0.0]


def test_apply_scaler_missing_column():
    _, params = minmax_scale(_matrix(a=[2.0, 6.0]), ["a"])
    with pytest.raises(DataValidationError, match="a"):
        apply_scaler(_matrix(b=[1.0, 2.0]), params)


def test_scaler_inverse_and_json_round_trip():
    matrix = _matrix(target=[8.99, 13.99, 17.99], a=[1.0, 2.0, 3.0])
    standardized, standard = standardize(matrix, ["y"])
    _, minmax = minmax_scale(standardized, ["y"])
    params = ScalerParams.from_dict(standard.then(minmax).to_dict())
    scaled = params.transform_column("y", [8.99, 17.99])
    np.testing.assert_allclose(params.inverse_column("y", scaled), [8.99, 17.99])


# ---------------------------------------------------------------- one-hot


def test_one_hot_plans_in_lexicographic_order():
    matrix = _matrix(a=[0.0, 1.0, 2.0], categorical={"plan_from": ["Basic", "Standard", "Premium"]})
    encoded = one_hot_encode(matrix, ["plan_from"])
    group = ["plan_from=Basic", "plan_from=Premium", "plan_from=Standard"]
    assert encoded.column_names == ["a"] + group + ["y"]
    assert encoded.frame.loc[1, group].tolist() == [0.0, 0.0, 1.0]
    assert encoded.columns["plan_from=Standard"].group == "plan_from"


def test_one_hot_boolean_column():
    matrix = _matrix(a=[0.0, 1.0], categorical={"left_and_returned": ["true", "false"]})
    encoded = one_hot_encode(matrix, ["left_and_returned"])
    block = encoded.frame[["left_and_returned=false", "left_and_returned=true"]].to_numpy()
    assert block.sum(axis=1).tolist() == [1.0, 1.0]


def test_one_hot_unseen_label_names_column_and_label():
    train = _matrix(a=[0.0, 1.0], categorical={"plan_from": ["Basic", "Premium"]})
    fitted = fit_categories(train, ["plan_from"])
    other = _matrix(a=[0.0], categorical={"plan_from": ["Ultra"]})
    with pytest.raises(DataValidationError, match=r"'plan_from'.*'Ultra'"):
        one_hot_encode(other, ["plan_from"], fitted)


# ---------------------------------------------------------------- split


def test_split_sizes_hundred():
    assert split(100, (0.4, 0.3, 0.3), seed=1).sizes == (40, 30, 30)


def test_split_deterministic():
    assert split(10, (0.4, 0.3, 0.3), seed=9) == split(10, (0.4, 0.3, 0.3), seed=9)


def test_split_minimum_case():
    assert split(3, (0.4, 0.3, 0.3), seed=0).sizes == (1, 1, 1)


def test_split_empty_part_is_error():
    with pytest.raises(DataValidationError, match="empty"):
        split(2, (0.4, 0.3, 0.3), seed=0)


@pytest.mark.parametrize("ratios", [(0.5, 0.5, 0.1), (0.5, 0.5, 0.0), (0.5, 0.5)])
def test_split_rejects_bad_ratios(ratios):
    with pytest.raises(DataValidationError):
        split(10, ratios, seed=0)


@given(st.integers(3, 500), st.integers(0, 2**63 - 1))
def test_split_parts_disjoint_and_exhaustive(n_rows, seed):
    parts = split(n_rows, (0.4, 0.3, 0.3), seed)
    combined = np.concatenate([parts.train, parts.validation, parts.test])
    assert sorted(combined.tolist()) == list(range(n_rows))
    for size, ratio in zip(parts.sizes, (0.4, 0.3, 0.3)):
        assert abs(size - n_rows * ratio) <= 1


# ---------------------------------------------------------------- chain and cache


def test_prepare_features_chain(base_matrix):
    prepared = prepare_features(base_matrix, PreprocessOptions(seed=5))
    matrix = prepared.matrix
    assert not matrix.categorical_columns()
    for members in matrix.one_hot_groups().values():
        assert (matrix.frame[members].sum(axis=1) == 1.0).all()
    train = matrix.take(prepared.split.train)
    for name in matrix.numeric_columns(include_target=True):
        column = train.frame[name]
        if prepared.scaler.for_column(name)[-1].degenerate:
            assert (column == 0.0).all()
        else:
            assert column.min() == 0.0 and column.max() == 1.0
    expected_inputs = (
        3 + 6 + 36 + sum(len(labels) for labels in prepared.categories.categories.values())
    )
    assert count_model_inputs(matrix) == expected_inputs


def test_prepare_features_filters_outliers_over_all_rows_before_split(base_matrix):
    options = PreprocessOptions(seed=5, z_threshold=3.0)
    cleaned = remove_outliers(base_matrix, options.z_threshold)
    prepared = prepare_features(base_matrix, options)
    assert prepared.dropped_outliers == base_matrix.n_rows - cleaned.n_rows
    assert sum(prepared.split.sizes) == cleaned.n_rows == prepared.matrix.n_rows
    assert prepared.matrix.plan_labels() == cleaned.plan_labels()


def test_prepare_features_deterministic(base_matrix):
    first = prepare_features(base_matrix, PreprocessOptions(seed=5))
    second = prepare_features(base_matrix, PreprocessOptions(seed=5))
    assert first.matrix.equals(second.matrix)
    assert first.split == second.split


def test_count_inputs_requires_encoding(base_matrix):
    with pytest.raises(DataValidationError):
        count_model_inputs(base_matrix)


def test_matrix_cache_round_trip(tmp_path, base_matrix):
    prepared = prepare_features(base_matrix, PreprocessOptions(seed=3))
    path = save_matrix(
        prepared.matrix, tmp_path / "matrix.csv", prepared.scaler, prepared.split, prepared.categories, seed=3
    )
    cached = load_matrix(path)
    assert cached.matrix.equals(prepared.matrix)
    assert cached.scaler == prepared.scaler
    assert cached.split == prepared.split
    assert cached.categories == prepared.categories
    assert cached.seed == 3
