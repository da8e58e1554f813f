"""
Comparison classifiers fit on plan labels: Gaussian Naive Bayes, SGD logistic
regression (one-vs-rest) and Random Forest.
"""

from baselines.naive_bayes import GnbModel, gnb_fit, gnb_log_posteriors, gnb_predict
from baselines.persistence import baseline_predict, load_baseline, save_baseline
from baselines.random_forest import DecisionTree, RandomForest, fit_tree, rf_fit, rf_predict
from baselines.sgd import SgdClassifier, sgd_decision, sgd_fit, sgd_predict

__all__ = [
    "GnbModel",
    "gnb_fit",
    "gnb_log_posteriors",
    "gnb_predict",
    "baseline_predict",
    "load_baseline",
    "save_baseline",
    "DecisionTree",
    "RandomForest",
    "fit_tree",
    "rf_fit",
    "rf_predict",
    "SgdClassifier",
    "sgd_decision",
    "sgd_fit",
    "sgd_predict",
]
