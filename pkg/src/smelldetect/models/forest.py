"""Random forest: bagged CART trees with per-node feature subsampling."""

from __future__ import annotations

import numpy as np

from .tree import DecisionTreeClassifier


class RandomForestClassifier:
    """Majority vote over seeded CART trees.

    Tree i trains with seed base_seed + i; with bootstrap=True it sees a
    with-replacement sample of the full training size drawn from that same
    per-tree seed.  max_features defaults to 'sqrt' inside forests; passing
    None disables the subsampling (useful to reduce a 1-tree forest to a
    plain decision tree).  Vote ties go to label 0.
    """

    def __init__(self, n_estimators=100, max_depth=None, min_samples_split=2,
                 min_samples_leaf=1, bootstrap=True, max_features="sqrt", seed=0):
        if n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")
        self.n_estimators = n_estimators
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.bootstrap = bootstrap
        self.max_features = max_features
        self.seed = seed
        self.trees_ = []

    def _make_tree(self, tree_seed):
        return DecisionTreeClassifier(
            max_depth=self.max_depth,
            max_features=self.max_features,
            min_samples_split=self.min_samples_split,
            min_samples_leaf=self.min_samples_leaf,
            seed=tree_seed,
        )

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        n = X.shape[0]
        self.trees_ = []
        for i in range(self.n_estimators):
            tree_seed = self.seed + i
            if self.bootstrap:
                sample = np.random.default_rng(tree_seed).integers(0, n, size=n)
                Xi, yi = X[sample], y[sample]
            else:
                Xi, yi = X, y
            self.trees_.append(self._make_tree(tree_seed).fit(Xi, yi))
        return self

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        if X.shape[0] == 0:
            return np.empty(0, dtype=int)
        votes = np.zeros((X.shape[0], 2), dtype=int)
        for tree in self.trees_:
            pred = tree.predict(X)
            votes[np.arange(X.shape[0]), pred] += 1
        return (votes[:, 1] > votes[:, 0]).astype(int)

    def to_state(self):
        return {"trees": [t.to_state() for t in self.trees_]}

    @classmethod
    def from_state(cls, state, **params):
        model = cls(**params)
        model.trees_ = [
            DecisionTreeClassifier.from_state(doc) for doc in state["trees"]
        ]
        return model
