"""Binomial-deviance gradient boosting with Newton-step leaf values.

Each round fits a squared-error regression tree to the negative gradients
(y - p), then replaces every leaf value by one Newton step
sum(residuals) / sum(p * (1 - p)) over the leaf's rows.  The model starts
from the training log-odds and thresholds the final score at zero.
"""

from __future__ import annotations

import math

import numpy as np

from ._kernels import best_split_sse


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


def log_loss(y, scores) -> float:
    """Mean binomial deviance of raw scores against 0/1 labels."""
    y = np.asarray(y, dtype=float)
    scores = np.asarray(scores, dtype=float)
    return float(np.mean(np.logaddexp(0.0, scores) - y * scores))


class _RegressionNode:
    __slots__ = ("feature", "threshold", "left", "right", "value", "leaf_id")

    def __init__(self):
        self.feature = -1
        self.threshold = 0.0
        self.left = None
        self.right = None
        self.value = 0.0
        self.leaf_id = -1

    def is_leaf(self):
        return self.left is None


class RegressionTree:
    """Squared-error CART regression tree with overridable leaf values.

    Split gain is the SSE reduction, computed from cumulative sums along each
    feature's sorted order; thresholds are midpoints of consecutive distinct
    values.  Quality ties break toward the lowest feature index and then the
    lowest threshold.
    """

    def __init__(self, max_depth):
        self.max_depth = max_depth
        self.root_ = None
        self.n_leaves_ = 0

    def fit(self, X, targets):
        X = np.asarray(X, dtype=float)
        targets = np.asarray(targets, dtype=float)
        self.n_leaves_ = 0
        self.root_ = self._build(X, targets, depth=0)
        return self

    def _build(self, X, t, depth):
        node = _RegressionNode()
        node.value = float(t.mean())
        if (
            t.shape[0] < 2
            or (self.max_depth is not None and depth >= self.max_depth)
            or np.all(t == t[0])
        ):
            node.leaf_id = self.n_leaves_
            self.n_leaves_ += 1
            return node
        split = self._best_split(X, t)
        if split is None:
            node.leaf_id = self.n_leaves_
            self.n_leaves_ += 1
            return node
        node.feature, node.threshold = split
        mask = X[:, node.feature] <= node.threshold
        node.left = self._build(X[mask], t[mask], depth + 1)
        node.right = self._build(X[~mask], t[~mask], depth + 1)
        return node

    @staticmethod
    def _best_split(X, t):
        # maximize the SSE reduction left^2/nl + right^2/nr - total^2/n;
        # ties break toward the lowest feature index, then lowest threshold
        feature, threshold = best_split_sse(X, t, float(t.sum()))
        if feature < 0:
            return None
        return int(feature), float(threshold)

    def apply(self, X):
        X = np.asarray(X, dtype=float)
        out = np.empty(X.shape[0], dtype=int)
        stack = [(self.root_, np.arange(X.shape[0]))]
        while stack:
            node, rows = stack.pop()
            if rows.size == 0:
                continue
            if node.is_leaf():
                out[rows] = node.leaf_id
                continue
            mask = X[rows, node.feature] <= node.threshold
            stack.append((node.left, rows[mask]))
            stack.append((node.right, rows[~mask]))
        return out

    def _leaves(self):
        leaves = {}

        def walk(node):
            if node.is_leaf():
                leaves[node.leaf_id] = node
            else:
                walk(node.left)
                walk(node.right)

        walk(self.root_)
        return leaves

    def set_leaf_values(self, values):
        for leaf_id, node in self._leaves().items():
            node.value = float(values[leaf_id])

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        out = np.empty(X.shape[0])
        stack = [(self.root_, np.arange(X.shape[0]))]
        while stack:
            node, rows = stack.pop()
            if rows.size == 0:
                continue
            if node.is_leaf():
                out[rows] = node.value
                continue
            mask = X[rows, node.feature] <= node.threshold
            stack.append((node.left, rows[mask]))
            stack.append((node.right, rows[~mask]))
        return out

    def to_state(self):
        def encode(node):
            if node.is_leaf():
                return {"value": node.value}
            return {
                "feature": node.feature,
                "threshold": node.threshold,
                "left": encode(node.left),
                "right": encode(node.right),
            }

        return encode(self.root_)

    @classmethod
    def from_state(cls, doc, max_depth=None):
        tree = cls(max_depth)
        counter = {"n": 0}

        def decode(d):
            node = _RegressionNode()
            if "value" in d:
                node.value = d["value"]
                node.leaf_id = counter["n"]
                counter["n"] += 1
                return node
            node.feature = d["feature"]
            node.threshold = d["threshold"]
            node.left = decode(d["left"])
            node.right = decode(d["right"])
            return node

        tree.root_ = decode(doc)
        tree.n_leaves_ = counter["n"]
        return tree


class GradientBoostingClassifier:
    def __init__(self, n_estimators=100, learning_rate=0.1, max_depth=3, seed=0):
        if n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")
        if learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        self.n_estimators = n_estimators
        self.learning_rate = learning_rate
        self.max_depth = max_depth
        self.seed = seed
        self.base_score_ = 0.0
        self.trees_ = []
        self.train_losses_ = []

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        positives = int(y.sum())
        if positives == 0 or positives == y.shape[0]:
            raise ValueError("gradient boosting needs both classes (log-odds undefined)")
        p = positives / y.shape[0]
        self.base_score_ = math.log(p / (1.0 - p))
        scores = np.full(y.shape[0], self.base_score_)
        self.trees_ = []
        self.train_losses_ = [log_loss(y, scores)]
        for _ in range(self.n_estimators):
            prob = _sigmoid(scores)
            residual = y - prob
            tree = RegressionTree(self.max_depth).fit(X, residual)
            leaf_of = tree.apply(X)
            hess = prob * (1.0 - prob)
            values = np.zeros(tree.n_leaves_)
            for leaf in range(tree.n_leaves_):
                mask = leaf_of == leaf
                denom = float(hess[mask].sum())
                values[leaf] = float(residual[mask].sum()) / denom if denom > 0.0 else 0.0
            tree.set_leaf_values(values)
            scores = scores + self.learning_rate * tree.predict(X)
            self.trees_.append(tree)
            self.train_losses_.append(log_loss(y, scores))
        return self

    def decision_scores(self, X):
        X = np.asarray(X, dtype=float)
        scores = np.full(X.shape[0], self.base_score_)
        for tree in self.trees_:
            scores = scores + self.learning_rate * tree.predict(X)
        return scores

    def predict(self, X):
        if np.asarray(X).shape[0] == 0:
            return np.empty(0, dtype=int)
        return (self.decision_scores(X) > 0.0).astype(int)

    def to_state(self):
        return {
            "base_score": self.base_score_,
            "trees": [t.to_state() for t in self.trees_],
        }

    @classmethod
    def from_state(cls, state, **params):
        model = cls(**params)
        model.base_score_ = state["base_score"]
        model.trees_ = [
            RegressionTree.from_state(doc, max_depth=model.max_depth)
            for doc in state["trees"]
        ]
        return model
