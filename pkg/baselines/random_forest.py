"""
Random Forest of Gini-impurity decision trees grown on bootstrap samples.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from baselines.labels import MODEL_VERSION, check_rows, check_version, encode_labels
from config.errors import DataValidationError
from config.settings import settings

logger = logging.getLogger(__name__)

DEFAULT_N_TREES = 100
DEFAULT_MIN_SAMPLES_SPLIT = 2
LEAF = -1


@dataclass(frozen=True, eq=False)
class DecisionTree:
    """
    Flat node arrays. Node 0 is the root; leaves have ``feature == -1`` and
    their class counts in ``counts``. Rows with ``x[feature] <= threshold``
    go left.
    """

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    counts: np.ndarray

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    @property
    def depth(self) -> int:
        depths = np.zeros(self.n_nodes, dtype=int)
        for node in range(self.n_nodes):
            if self.feature[node] != LEAF:
                depths[self.left[node]] = depths[node] + 1
                depths[self.right[node]] = depths[node] + 1
        return int(depths.max())

    def leaf_of(self, x: np.ndarray) -> np.ndarray:
        nodes = np.zeros(len(x), dtype=int)
        active = self.feature[nodes] != LEAF
        while active.any():
            rows = np.flatnonzero(active)
            current = nodes[rows]
            go_left = x[rows, self.feature[current]] <= self.threshold[current]
            nodes[rows] = np.where(go_left, self.left[current], self.right[current])
            active = self.feature[nodes] != LEAF
        return nodes

    def predict_index(self, x: np.ndarray) -> np.ndarray:
        """Majority class index of each row's leaf; ties go to the lower index."""
        return np.argmax(self.counts[self.leaf_of(x)], axis=1)

    def to_dict(self) -> Dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "counts": self.counts.tolist(),
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "DecisionTree":
        return cls(
            feature=np.asarray(payload["feature"], dtype=int),
            threshold=np.asarray(payload["threshold"], dtype=float),
            left=np.asarray(payload["left"], dtype=int),
            right=np.asarray(payload["right"], dtype=int),
            counts=np.asarray(payload["counts"], dtype=int),
        )


@dataclass(frozen=True, eq=False)
class RandomForest:
    classes: Tuple[str, ...]
    trees: Tuple[DecisionTree, ...]
    n_features: int
    seed: int
    max_features: Optional[int] = None
    max_depth: Optional[int] = None

    @property
    def n_trees(self) -> int:
        return len(self.trees)

    def to_dict(self) -> Dict:
        return {
            "version": MODEL_VERSION,
            "kind": "random_forest",
            "classes": list(self.classes),
            "n_features": self.n_features,
            "seed": self.seed,
            "max_features": self.max_features,
            "max_depth": self.max_depth,
            "trees": [tree.to_dict() for tree in self.trees],
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "RandomForest":
        check_version(payload, "random_forest")
        return cls(
            classes=tuple(payload["classes"]),
            trees=tuple(DecisionTree.from_dict(tree) for tree in payload["trees"]),
            n_features=int(payload["n_features"]),
            seed=int(payload["seed"]),
            max_features=payload.get("max_features"),
            max_depth=payload.get("max_depth"),
        )


def default_max_features(n_features: int) -> int:
    return max(1, int(math.sqrt(n_features)))


def _best_split(x: np.ndarray, y: np.ndarray, n_classes: int, feature: int) -> Tuple[float, float]:
    """
    Lowest weighted child Gini over every cut between distinct sorted values
    of one feature. Returns (impurity, threshold), impurity inf when the
    feature is constant.
    """
    order = np.argsort(x[:, feature], kind="stable")
    values = x[order, feature]
    cuts = np.flatnonzero(values[:-1] < values[1:])
    if cuts.size == 0:
        return math.inf, math.nan

    onehot = np.zeros((len(y), n_classes))
    onehot[np.arange(len(y)), y[order]] = 1.0
    left_counts = np.cumsum(onehot, axis=0)[cuts]
    right_counts = onehot.sum(axis=0) - left_counts
    n_left = (cuts + 1).astype(float)
    n_right = len(y) - n_left
    gini_left = 1.0 - ((left_counts / n_left[:, None]) ** 2).sum(axis=1)
    gini_right = 1.0 - ((right_counts / n_right[:, None]) ** 2).sum(axis=1)
    weighted = (n_left * gini_left + n_right * gini_right) / len(y)

    best = int(np.argmin(weighted))
    low, high = values[cuts[best]], values[cuts[best] + 1]
    threshold = (low + high) / 2.0
    if not low <= threshold < high:
        threshold = low
    return float(weighted[best]), float(threshold)


def fit_tree(
    features: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    rng: np.random.Generator,
    max_features: Optional[int] = None,
    max_depth: Optional[int] = None,
    min_samples_split: int = DEFAULT_MIN_SAMPLES_SPLIT,
) -> DecisionTree:
    """
    Grow one tree on the given rows (no resampling here).

    Each node draws ``max_features`` candidate features; when none of them
    can split the node the remaining features are tried in index order.
    Ties between splits go to the lower feature index, then the lower
    threshold.
    """
    n_features = features.shape[1]
    m = n_features if max_features is None else min(max(1, max_features), n_features)
    feature: List[int] = []
    threshold: List[float] = []
    left: List[int] = []
    right: List[int] = []
    counts: List[np.ndarray] = []

    def new_node(rows: np.ndarray) -> int:
        feature.append(LEAF)
        threshold.append(0.0)
        left.append(LEAF)
        right.append(LEAF)
        counts.append(np.bincount(y[rows], minlength=n_classes))
        return len(feature) - 1

    stack = [(new_node(np.arange(len(y))), np.arange(len(y)), 0)]
    while stack:
        node, rows, depth = stack.pop()
        if len(rows) < min_samples_split or np.count_nonzero(counts[node]) <= 1:
            continue
        if max_depth is not None and depth >= max_depth:
            continue

        drawn = np.sort(rng.choice(n_features, size=m, replace=False))
        rest = np.setdiff1d(np.arange(n_features), drawn)
        x, labels = features[rows], y[rows]
        best: Optional[Tuple[float, int, float]] = None
        for candidates in (drawn, rest):
            for f in candidates:
                impurity, cut = _best_split(x, labels, n_classes, int(f))
                if impurity < math.inf and (best is None or impurity < best[0]):
                    best = (impurity, int(f), cut)
            if best is not None:
                break
        if best is None:
            continue

        _, f, cut = best
        goes_left = x[:, f] <= cut
        left_rows, right_rows = rows[goes_left], rows[~goes_left]
        feature[node], threshold[node] = f, cut
        left[node] = new_node(left_rows)
        right[node] = new_node(right_rows)
        stack.append((right[node], right_rows, depth + 1))
        stack.append((left[node], left_rows, depth + 1))

    return DecisionTree(
        feature=np.asarray(feature, dtype=int),
        threshold=np.asarray(threshold, dtype=float),
        left=np.asarray(left, dtype=int),
        right=np.asarray(right, dtype=int),
        counts=np.vstack(counts).astype(int),
    )


def _fit_bootstrap_tree(
    features: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    seed_seq: np.random.SeedSequence,
    max_features: Optional[int],
    max_depth: Optional[int],
) -> DecisionTree:
    rng = np.random.default_rng(seed_seq)
    sample = rng.integers(0, len(y), size=len(y))
    return fit_tree(features[sample], y[sample], n_classes, rng, max_features, max_depth)


def rf_fit(
    features,
    labels: Sequence[str],
    n_trees: int = DEFAULT_N_TREES,
    seed: Optional[int] = None,
    max_features: Optional[int] = None,
    max_depth: Optional[int] = None,
    max_workers: Optional[int] = None,
    classes: Optional[Sequence[str]] = None,
) -> RandomForest:
    """
    Fit ``n_trees`` trees, each on its own seeded bootstrap sample of size n.

    ``max_features`` defaults to floor(sqrt(d)). Tree ``i`` uses the ``i``-th
    child of the seed's sequence, so the forest is the same for any
    ``max_workers``.
    """
    if n_trees < 1:
        raise DataValidationError(f"n_trees must be >= 1, got {n_trees}")
    if max_depth is not None and max_depth < 0:
        raise DataValidationError(f"max_depth must be >= 0, got {max_depth}")
    seed = settings.default_seed if seed is None else seed
    classes, y = encode_labels(labels, classes)
    x = check_rows(features, len(y))
    if len(y) == 0:
        raise DataValidationError("Cannot fit a forest on zero rows")
    m = default_max_features(x.shape[1]) if max_features is None else max_features
    workers = settings.max_workers if max_workers is None else max_workers
    seeds = np.random.SeedSequence(seed).spawn(n_trees)
    show = settings.show_progress

    if workers > 1 and n_trees > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_fit_bootstrap_tree, x, y, len(classes), s, m, max_depth) for s in seeds
            ]
            trees = [f.result() for f in tqdm(futures, desc="Random forest", unit="tree", disable=not show)]
    else:
        trees = [
            _fit_bootstrap_tree(x, y, len(classes), s, m, max_depth)
            for s in tqdm(seeds, desc="Random forest", unit="tree", disable=not show)
        ]
    logger.debug("Fitted %d trees, mean depth %.1f", n_trees, np.mean([t.depth for t in trees]))
    return RandomForest(
        classes=classes,
        trees=tuple(trees),
        n_features=x.shape[1],
        seed=seed,
        max_features=m,
        max_depth=max_depth,
    )


def rf_predict(model: RandomForest, rows) -> List[str]:
    """Majority vote of the trees; ties go to the lexicographically smaller label."""
    x = check_rows(rows, width=model.n_features)
    votes = np.zeros((len(x), len(model.classes)), dtype=int)
    for tree in model.trees:
        votes[np.arange(len(x)), tree.predict_index(x)] += 1
    return [model.classes[i] for i in np.argmax(votes, axis=1)]
