"""CART-style binary classification tree with Gini impurity splits.

Candidate thresholds are midpoints of consecutive distinct sorted values.
Ties in split quality break toward the lowest feature index, then the lowest
threshold; leaf-class ties break toward label 0.  Supports instance weights
(used by the boosting stumps) and per-node feature subsampling (used inside
forests).
"""

from __future__ import annotations

import math

import numpy as np

from ._kernels import best_split_gini


def gini_impurity(class_weights) -> float:
    """1 - sum of squared class proportions, from per-class weight sums."""
    w = np.asarray(class_weights, dtype=float)
    total = w.sum()
    if total <= 0:
        return 0.0
    impurity = 1.0
    for part in w:
        impurity -= (part / total) ** 2
    return impurity


class _Node:
    __slots__ = ("feature", "threshold", "left", "right", "prediction")

    def __init__(self, prediction, feature=-1, threshold=0.0, left=None, right=None):
        self.prediction = prediction
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right

    def is_leaf(self):
        return self.left is None


def _best_split(X, y, w, feature_indices, min_samples_leaf):
    """Exhaustive weighted-Gini split search over the given features.

    Returns (feature, threshold) or None when no split strictly reduces the
    weighted impurity.  The kernel scans features in ascending index order
    and positions in ascending threshold order with strict improvement,
    which realizes the lowest-index / lowest-threshold tie-break.
    """
    n = y.shape[0]
    if n < 2:
        return None
    total_w = float(w.sum())
    parent_w1 = float(w[y == 1].sum())
    feature, threshold = best_split_gini(
        X, feature_indices, y, w, total_w, parent_w1, min_samples_leaf
    )
    if feature < 0:
        return None
    return int(feature), float(threshold)


def _weighted_majority(y, w) -> int:
    w1 = float(w[y == 1].sum())
    w0 = float(w.sum()) - w1
    return 1 if w1 > w0 else 0


class DecisionTreeClassifier:
    """Binary CART tree.

    max_features None considers every feature at each node; 'sqrt' / 'log2'
    sample that many features per node from the seeded generator.
    """

    def __init__(self, max_depth=None, max_features=None, min_samples_split=2,
                 min_samples_leaf=1, seed=0):
        if max_depth is not None and max_depth < 1:
            raise ValueError("max_depth must be None or >= 1")
        if max_features not in (None, "sqrt", "log2"):
            raise ValueError("max_features must be None, 'sqrt', or 'log2'")
        if min_samples_split < 2:
            raise ValueError("min_samples_split must be >= 2")
        if min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")
        self.max_depth = max_depth
        self.max_features = max_features
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.seed = seed
        self.root_ = None
        self.n_features_ = 0

    def _n_candidates(self, d):
        if self.max_features == "sqrt":
            return max(1, int(math.sqrt(d)))
        if self.max_features == "log2":
            return max(1, int(math.log2(d))) if d > 1 else 1
        return d

    def fit(self, X, y, sample_weight=None):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        if X.shape[0] == 0:
            raise ValueError("cannot fit a tree on an empty training set")
        w = np.ones(X.shape[0]) if sample_weight is None else np.asarray(sample_weight, dtype=float)
        self.n_features_ = X.shape[1]
        rng = np.random.default_rng(self.seed)
        self.root_ = self._build(X, y, w, depth=0, rng=rng)
        return self

    def _build(self, X, y, w, depth, rng):
        node = _Node(prediction=_weighted_majority(y, w))
        n = y.shape[0]
        if (
            n < self.min_samples_split
            or (self.max_depth is not None and depth >= self.max_depth)
            or np.all(y == y[0])
        ):
            return node

        d = X.shape[1]
        k = self._n_candidates(d)
        if k < d:
            features = np.sort(rng.choice(d, size=k, replace=False))
        else:
            features = np.arange(d)

        split = _best_split(X, y, w, features, self.min_samples_leaf)
        if split is None:
            return node
        feature, threshold = split
        mask = X[:, feature] <= threshold
        node.feature = feature
        node.threshold = threshold
        node.left = self._build(X[mask], y[mask], w[mask], depth + 1, rng)
        node.right = self._build(X[~mask], y[~mask], w[~mask], depth + 1, rng)
        return node

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        out = np.empty(X.shape[0], dtype=int)
        stack = [(self.root_, np.arange(X.shape[0]))]
        while stack:
            node, rows = stack.pop()
            if rows.size == 0:
                continue
            if node.is_leaf():
                out[rows] = node.prediction
                continue
            mask = X[rows, node.feature] <= node.threshold
            stack.append((node.left, rows[mask]))
            stack.append((node.right, rows[~mask]))
        return out

    # -- serialization -------------------------------------------------

    def to_state(self):
        def encode(node):
            if node.is_leaf():
                return {"leaf": int(node.prediction)}
            return {
                "feature": int(node.feature),
                "threshold": float(node.threshold),
                "prediction": int(node.prediction),
                "left": encode(node.left),
                "right": encode(node.right),
            }

        return {"n_features": self.n_features_, "root": encode(self.root_)}

    @classmethod
    def from_state(cls, state, **params):
        def decode(doc):
            if "leaf" in doc:
                return _Node(prediction=doc["leaf"])
            return _Node(
                prediction=doc["prediction"],
                feature=doc["feature"],
                threshold=doc["threshold"],
                left=decode(doc["left"]),
                right=decode(doc["right"]),
            )

        tree = cls(**params)
        tree.n_features_ = state["n_features"]
        tree.root_ = decode(state["root"])
        return tree
