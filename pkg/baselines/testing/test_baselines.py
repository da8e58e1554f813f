"""
Tests for the Gaussian Naive Bayes, SGD logistic and Random Forest baselines.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from baselines.naive_bayes import GnbModel, gnb_fit, gnb_log_posteriors, gnb_predict
from baselines.random_forest import LEAF, RandomForest, fit_tree, rf_fit, rf_predict
from baselines.sgd import SgdClassifier, sgd_fit, sgd_predict
from config.errors import DataValidationError


def _accuracy(predicted, labels):
    return float(np.mean([p == t for p, t in zip(predicted, labels)]))


def _blobs(seed=0, n=100):
    rng = np.random.default_rng(seed)
    x = np.concatenate([rng.normal(-10, 1, size=(n, 1)), rng.normal(10, 1, size=(n, 1))])
    labels = ["Basic"] * n + ["Premium"] * n
    return x, labels


def _xor(seed=0, n=200):
    rng = np.random.default_rng(seed)
    x = rng.random((n, 2))
    labels = ["on" if (a > 0.5) != (b > 0.5) else "off" for a, b in x]
    return x, labels


# ---------------------------------------------------------------- naive bayes


def test_gnb_separates_far_blobs():
    x, labels = _blobs()
    model = gnb_fit(x, labels)
    assert _accuracy(gnb_predict(model, x), labels) == 1.0
    assert model.priors.sum() == pytest.approx(1.0)
    assert np.all(model.variances > 0)


def test_gnb_single_class_always_predicts_it():
    model = gnb_fit([[1.0], [2.0], [3.0]], ["Standard"] * 3)
    assert gnb_predict(model, [[-50.0], [0.0], [99.0]]) == ["Standard"] * 3


def test_gnb_matches_hand_computed_densities():
    x = np.array([[0.0], [2.0], [4.0], [8.0]])
    model = gnb_fit(x, ["a", "a", "b", "b"])
    assert model.means.ravel().tolist() == [1.0, 6.0]
    assert model.variances.ravel() == pytest.approx([1.0, 4.0], rel=1e-6)

    def log_density(value, mean, var):
        return -0.5 * math.log(2 * math.pi * var) - (value - mean) ** 2 / (2 * var) + math.log(0.5)

    posteriors = gnb_log_posteriors(model, [[3.0], [2.5]])
    assert posteriors[0] == pytest.approx([log_density(3.0, 1, 1), log_density(3.0, 6, 4)], rel=1e-6)
    assert gnb_predict(model, [[3.0], [2.5]]) == ["b", "a"]


def test_gnb_smoothing_scales_with_largest_variance():
    x = np.array([[0.0, 1.0], [0.0, 3.0], [0.0, 5.0], [0.0, 7.0]])
    model = gnb_fit(x, ["a", "a", "b", "b"], var_smoothing=0.01)
    largest = x.var(axis=0).max()
    assert model.variances[:, 0] == pytest.approx([0.01 * largest] * 2)


def test_gnb_decision_ignores_prior_scale():
    x, labels = _blobs(seed=1, n=30)
    x = np.concatenate([x, np.zeros((5, 1))])
    labels = labels + ["Basic"] * 5
    model = gnb_fit(x, labels)
    scaled = model.priors * 7.5
    rescaled = replace(model, priors=scaled / scaled.sum())
    probe = np.linspace(-12, 12, 41).reshape(-1, 1)
    assert gnb_predict(rescaled, probe) == gnb_predict(model, probe)


def test_gnb_rejects_class_without_samples():
    with pytest.raises(DataValidationError, match="Premium"):
        gnb_fit([[1.0], [2.0]], ["Basic", "Basic"], classes=["Basic", "Premium"])


def test_gnb_dict_round_trip():
    x, labels = _blobs(seed=2, n=10)
    model = gnb_fit(x, labels)
    restored = GnbModel.from_dict(model.to_dict())
    assert restored.classes == model.classes
    assert np.array_equal(restored.variances, model.variances)
    assert gnb_predict(restored, x) == gnb_predict(model, x)


# ---------------------------------------------------------------- sgd


def test_sgd_fits_separable_data():
    x = np.array([[-2.0], [-1.5], [-1.0], [-0.5], [0.5], [1.0], [1.5], [2.0]])
    labels = ["low"] * 4 + ["high"] * 4
    model = sgd_fit(x, labels, learning_rate=0.01, epochs=100, seed=4)
    assert _accuracy(sgd_predict(model, x), labels) == 1.0


def test_sgd_zero_learning_rate_keeps_initial_parameters():
    x, labels = _blobs(n=10)
    model = sgd_fit(x, labels, learning_rate=0.0, epochs=3, seed=1)
    assert not model.weights.any() and not model.biases.any()


def test_sgd_is_deterministic_per_seed():
    x, labels = _blobs(seed=5, n=40)
    first = sgd_fit(x, labels, epochs=5, seed=9)
    second = sgd_fit(x, labels, epochs=5, seed=9)
    assert np.array_equal(first.weights, second.weights)
    assert sgd_predict(first, x) == sgd_predict(second, x)


def test_sgd_requires_an_epoch():
    with pytest.raises(DataValidationError, match="epochs"):
        sgd_fit([[0.0]], ["a"], epochs=0)


def test_sgd_dict_round_trip():
    x, labels = _blobs(n=10)
    model = sgd_fit(x, labels, epochs=2, seed=3)
    restored = SgdClassifier.from_dict(model.to_dict())
    assert np.array_equal(restored.weights, model.weights)
    assert (restored.learning_rate, restored.epochs, restored.seed) == (0.01, 2, 3)


# ---------------------------------------------------------------- random forest


def test_forest_on_constant_labels_predicts_that_label():
    x = np.random.default_rng(0).normal(size=(12, 3))
    model = rf_fit(x, ["Standard"] * 12, n_trees=1, seed=1, max_workers=1)
    assert model.trees[0].n_nodes == 1
    assert rf_predict(model, x) == ["Standard"] * 12


def test_forest_captures_xor_interaction():
    x, labels = _xor()
    model = rf_fit(x, labels, n_trees=50, seed=2, max_workers=1)
    assert _accuracy(rf_predict(model, x), labels) > 0.95


def test_single_tree_reproduces_hand_built_split():
    x = np.array([[0.0, 3.0], [1.0, 0.0], [2.0, 2.0], [3.0, 1.0]])
    y = np.array([0, 0, 1, 1])
    tree = fit_tree(x, y, 2, np.random.default_rng(0))
    assert (tree.feature[0], tree.threshold[0]) == (0, 1.5)
    assert tree.n_nodes == 3
    assert tree.predict_index(x).tolist() == [0, 0, 1, 1]


def test_tree_structure_is_well_formed():
    x, labels = _xor(seed=3, n=60)
    model = rf_fit(x, labels, n_trees=5, seed=4, max_workers=1)
    for tree in model.trees:
        internal = tree.feature != LEAF
        assert np.all(tree.left[internal] > 0) and np.all(tree.right[internal] > 0)
        assert np.all(tree.counts[~internal].sum(axis=1) > 0)
        assert np.all(tree.counts[internal] == tree.counts[tree.left[internal]] + tree.counts[tree.right[internal]])


def test_trees_beat_prior_on_their_bootstrap_sample():
    x, labels = _xor(seed=5, n=80)
    classes = sorted(set(labels))
    y = np.array([classes.index(label) for label in labels])
    model = rf_fit(x, labels, n_trees=8, seed=6, max_workers=1)
    for tree, seed_seq in zip(model.trees, np.random.SeedSequence(6).spawn(8)):
        sample = np.random.default_rng(seed_seq).integers(0, len(y), size=len(y))
        baseline = np.bincount(y[sample]).max() / len(sample)
        assert np.mean(tree.predict_index(x[sample]) == y[sample]) >= baseline


def test_vote_ties_go_to_smaller_label():
    x = np.array([[0.0], [1.0]])
    model = rf_fit(x, ["b", "a"], n_trees=1, seed=0, max_workers=1)
    tie = replace(model.trees[0], counts=np.array([[1, 1]] * model.trees[0].n_nodes))
    assert rf_predict(replace(model, trees=(tie,)), x) == ["a", "a"]


def test_forest_max_depth_limits_trees():
    x, labels = _xor(seed=7)
    model = rf_fit(x, labels, n_trees=3, seed=8, max_depth=2, max_workers=1)
    assert all(tree.depth <= 2 for tree in model.trees)


def test_forest_is_deterministic_across_worker_counts():
    x, labels = _xor(seed=9, n=100)
    sequential = rf_fit(x, labels, n_trees=6, seed=10, max_workers=1)
    parallel = rf_fit(x, labels, n_trees=6, seed=10, max_workers=2)
    assert sequential.to_dict() == parallel.to_dict()


def test_forest_dict_round_trip():
    x, labels = _xor(seed=11, n=50)
    model = rf_fit(x, labels, n_trees=4, seed=12, max_workers=1)
    restored = RandomForest.from_dict(model.to_dict())
    assert restored.to_dict() == model.to_dict()
    assert rf_predict(restored, x) == rf_predict(model, x)


def test_forest_rejects_wrong_width():
    x, labels = _xor(n=20)
    model = rf_fit(x, labels, n_trees=1, seed=0, max_workers=1)
    with pytest.raises(DataValidationError, match="columns"):
        rf_predict(model, np.zeros((2, 3)))
