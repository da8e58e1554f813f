"""
Tests for the price-to-plan bridge, confusion counts, metrics and comparison tables.
"""

import random

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from config.errors import DataValidationError
from evaluation.bridge import PlanAccuracyScorer, price_to_class, prices_to_classes
from evaluation.comparison import ModelRun, compare_models, format_comparison, read_comparison_csv, write_comparison
from evaluation.metrics import (
    Averaging,
    ConfusionCounts,
    confusion,
    evaluate_predictions,
    f1_from_counts,
    f1_from_rates,
    metrics,
)
from evaluation.reference import PUBLISHED_REFERENCE_RUNS, published_reference_table
from preprocess.scaling import ColumnScaler, ScaleMethod, ScalerParams
from synthgen.catalog import Plan, PlanCatalog

CATALOG = PlanCatalog(
    {
        "US": (Plan("Basic", 8.0), Plan("Standard", 12.0), Plan("Premium", 18.0)),
        "IN": (Plan("Basic", 3.0), Plan("Standard", 5.0), Plan("Premium", 7.5)),
    }
)
# scaled 0 -> 3.0, scaled 1 -> 18.0
SCALER = ScalerParams((ColumnScaler("price_to", ScaleMethod.MINMAX, 3.0, 18.0),))


def _scaled(price):
    return (price - 3.0) / 15.0


# ---------------------------------------------------------------- bridge


def test_exact_catalog_price_maps_to_its_plan():
    assert price_to_class(_scaled(12.0), CATALOG, "US", SCALER) == "Standard"
    assert price_to_class(_scaled(7.5), CATALOG, "IN", SCALER) == "Premium"


def test_midway_price_goes_to_cheaper_plan():
    catalog = PlanCatalog({"US": (Plan("Basic", 8.0), Plan("Standard", 12.0))})
    scaler = ScalerParams((ColumnScaler("price_to", ScaleMethod.MINMAX, 8.0, 12.0),))
    assert price_to_class(0.5, catalog, "US", scaler) == "Basic"


def test_unknown_country_is_rejected():
    with pytest.raises(DataValidationError, match="FR"):
        price_to_class(0.5, CATALOG, "FR", SCALER)


def _linear_scan(price, plans):
    best = plans[0]
    for plan in plans[1:]:
        if abs(plan.monthly_price - price) < abs(best.monthly_price - price):
            best = plan
    return best.label


@settings(max_examples=200)
@given(
    st.lists(
        st.tuples(st.floats(min_value=-0.5, max_value=1.5), st.sampled_from(["US", "IN"])),
        min_size=1,
        max_size=20,
    )
)
def test_bridge_matches_linear_scan(pairs):
    predictions = [p for p, _ in pairs]
    countries = [c for _, c in pairs]
    labels = prices_to_classes(predictions, countries, CATALOG, SCALER)
    for prediction, country, label in zip(predictions, countries, labels):
        price = SCALER.inverse_column("price_to", np.array([prediction]))[0]
        assert label == _linear_scan(price, CATALOG.plans_for(country))
        assert label == price_to_class(prediction, CATALOG, country, SCALER)


def test_plan_accuracy_scorer():
    scorer = PlanAccuracyScorer(CATALOG, SCALER, ("US", "US", "IN"), ("Basic", "Premium", "Basic"))
    predictions = np.array([_scaled(8.2), _scaled(12.0), _scaled(3.1)])
    assert scorer(predictions, np.zeros(3)) == pytest.approx(2 / 3)


# ---------------------------------------------------------------- confusion


def _constructed_binary():
    true = ["yes"] * 5 + ["no"] * 5
    predicted = ["yes", "yes", "yes", "no", "no", "yes", "no", "no", "no", "no"]
    return predicted, true


def test_binary_confusion_hand_tally():
    predicted, true = _constructed_binary()
    counts = confusion(predicted, true, ["no", "yes"]).counts_for("yes")
    assert (counts.tp, counts.fp, counts.fn, counts.tn) == (3, 1, 2, 4)


def test_perfect_predictions_have_no_errors():
    labels = ["Basic", "Premium", "Standard", "Basic"]
    counts = confusion(labels, labels, ["Basic", "Premium", "Standard"])
    assert all(c.fp == 0 and c.fn == 0 for c in counts.per_class)


def test_confusion_totals_and_order_invariance():
    rng = random.Random(3)
    classes = ["Basic", "Premium", "Standard"]
    true = [rng.choice(classes) for _ in range(50)]
    predicted = [rng.choice(classes) for _ in range(50)]
    counts = confusion(predicted, true, classes)
    assert all(c.tp + c.fp + c.fn + c.tn == 50 for c in counts.per_class)

    order = list(range(50))
    rng.shuffle(order)
    shuffled = confusion([predicted[i] for i in order], [true[i] for i in order], classes)
    assert shuffled == counts


def test_confusion_rejects_unknown_label():
    with pytest.raises(DataValidationError, match="Gold"):
        confusion(["Gold"], ["Basic"], ["Basic", "Premium"])


def test_confusion_rejects_length_mismatch():
    with pytest.raises(DataValidationError):
        confusion(["Basic"], ["Basic", "Basic"], ["Basic"])


# ---------------------------------------------------------------- metrics


def test_binary_metrics_hand_case():
    report = metrics(ConfusionCounts.binary(tp=3, fp=1, fn=2, tn=4), Averaging.BINARY)
    assert report.accuracy == pytest.approx(0.7)
    assert report.precision == pytest.approx(0.75)
    assert report.recall == pytest.approx(0.6)
    assert report.f1 == pytest.approx(0.6667, abs=1e-4)


def test_binary_helper_matches_counted_confusion():
    predicted, true = _constructed_binary()
    assert confusion(predicted, true, ["no", "yes"]) == ConfusionCounts.binary(3, 1, 2, 4)


def test_all_correct_scores_one():
    labels = ["Basic", "Premium", "Standard"] * 4
    _, report = evaluate_predictions(labels, labels)
    assert (report.accuracy, report.precision, report.recall, report.f1) == (1.0, 1.0, 1.0, 1.0)


@settings(max_examples=1000)
@given(st.tuples(*[st.integers(min_value=0, max_value=10_000)] * 3).filter(lambda c: c[0] > 0))
def test_both_f1_forms_agree(counts):
    tp, fp, fn = counts
    p = tp / (tp + fp)
    r = tp / (tp + fn)
    assert abs(f1_from_counts(tp, fp, fn) - f1_from_rates(p, r)) < 1e-12


@given(st.tuples(*[st.integers(min_value=0, max_value=500)] * 4).filter(lambda c: sum(c) > 0))
def test_binary_accuracy_is_integer_identity(counts):
    tp, fp, fn, tn = counts
    report = metrics(ConfusionCounts.binary(tp, fp, fn, tn), Averaging.BINARY)
    assert round(report.accuracy * sum(counts)) == tp + tn
    assert all(0.0 <= v <= 1.0 for v in (report.accuracy, report.precision, report.recall, report.f1))


def test_zero_denominators_score_zero():
    report = metrics(ConfusionCounts.binary(tp=0, fp=0, fn=3, tn=2), Averaging.BINARY)
    assert (report.precision, report.recall, report.f1) == (0.0, 0.0, 0.0)


def test_weighted_macro_weights_by_support():
    true = ["a"] * 6 + ["b"] * 2 + ["c"] * 2
    predicted = ["a"] * 5 + ["b"] + ["b", "a"] + ["c", "c"]
    _, report = evaluate_predictions(predicted, true)
    per_class = report.per_class
    expected_precision = 0.6 * per_class["a"]["precision"] + 0.2 * per_class["b"]["precision"] + 0.2 * 1.0
    assert report.accuracy == pytest.approx(0.8)
    assert report.precision == pytest.approx(expected_precision)
    assert report.support == {"a": 6, "b": 2, "c": 2}


def test_weighted_macro_is_invariant_to_relabeling():
    rng = random.Random(8)
    classes = ["Basic", "Premium", "Standard"]
    true = [rng.choice(classes) for _ in range(60)]
    predicted = [t if rng.random() < 0.7 else rng.choice(classes) for t in true]
    rename = {"Basic": "z", "Premium": "x", "Standard": "y"}
    _, original = evaluate_predictions(predicted, true)
    _, renamed = evaluate_predictions([rename[p] for p in predicted], [rename[t] for t in true])
    for name in ("accuracy", "precision", "recall", "f1"):
        assert getattr(renamed, name) == pytest.approx(getattr(original, name), abs=1e-12)


def test_metrics_reject_empty_counts():
    with pytest.raises(DataValidationError, match="zero samples"):
        metrics(confusion([], [], ["a", "b"]))


def test_binary_mode_needs_positive_class_beyond_two_classes():
    counts = confusion(["a", "b", "c"], ["a", "b", "c"], ["a", "b", "c"])
    with pytest.raises(DataValidationError, match="positive"):
        metrics(counts, Averaging.BINARY)
    assert metrics(counts, Averaging.BINARY, positive="b").accuracy == 1.0


# ---------------------------------------------------------------- comparison


def _run(model, features, accuracy):
    _, report = evaluate_predictions(["a", "b"], ["a", "b"])
    return ModelRun(model, features, type(report)(accuracy, 0.5, 0.5, 0.5, report.averaging))


def test_comparison_sorted_by_accuracy():
    table = compare_models([_run("GNB", "select", 0.74), _run("ANN final", "select", 0.95), _run("RF", "full", 0.9)])
    assert table["model"].tolist() == ["ANN final", "RF", "GNB"]
    assert list(table.columns) == ["model", "features", "accuracy", "f1", "precision", "recall"]


def test_single_run_single_row():
    assert len(compare_models([_run("SGD", "select", 0.7)])) == 1


def test_comparison_needs_a_run():
    with pytest.raises(DataValidationError):
        compare_models([])


def test_comparison_files(tmp_path):
    table = compare_models([_run("ANN final", "select", 0.95), _run("RF", "select", 0.9)])
    csv_path, text_path = write_comparison(table, tmp_path / "comparison.csv", tmp_path / "comparison.txt")
    assert read_comparison_csv(csv_path).equals(table)
    lines = text_path.read_text(encoding="utf-8").splitlines()
    assert lines[0].split() == ["Model", "Features", "Accuracy", "F1", "Precision", "Recall"]
    assert "0.9500" in lines[2]
    assert len({len(line) for line in lines[:2]}) == 1


def test_published_reference_rows():
    rows = {(r.model, r.features): r.report for r in PUBLISHED_REFERENCE_RUNS}
    final = rows[("ANN final", "select")]
    assert (final.accuracy, final.f1, final.precision, final.recall) == (0.9506, 0.9182, 0.9394, 0.9013)
    forest = rows[("Random Forest", "select")]
    assert (forest.accuracy, forest.f1, forest.precision, forest.recall) == (0.8984, 0.7146, 0.8994, 0.6781)
    table = published_reference_table()
    assert len(table) == 7
    assert table.iloc[0]["model"] == "ANN final"
    assert all(tag.endswith("(published)") for tag in table["features"])
    assert "0.9506" in format_comparison(table)
