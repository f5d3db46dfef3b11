"""k-nearest-neighbor classifier under Minkowski-p distance."""

from __future__ import annotations

import numpy as np


class KnnClassifier:
    """Majority (or inverse-distance-weighted) vote among the k nearest rows.

    Distance ties resolve to the lower training-row index; vote ties resolve
    to label 0.  With distance weighting, any neighbor at distance exactly
    zero dominates: the vote is then taken among the zero-distance rows only.
    """

    def __init__(self, n_neighbors=5, p=2, weights="uniform"):
        if n_neighbors < 1:
            raise ValueError("n_neighbors must be >= 1")
        if p not in (1, 2):
            raise ValueError("p must be 1 or 2")
        if weights not in ("uniform", "distance"):
            raise ValueError("weights must be 'uniform' or 'distance'")
        self.n_neighbors = n_neighbors
        self.p = p
        self.weights = weights
        self.X_ = None
        self.y_ = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        if self.n_neighbors > X.shape[0]:
            raise ValueError(
                f"n_neighbors={self.n_neighbors} exceeds {X.shape[0]} training rows"
            )
        self.X_ = X
        self.y_ = y
        return self

    def _distances(self, queries):
        diffs = np.abs(queries[:, None, :] - self.X_[None, :, :])
        if self.p == 1:
            return diffs.sum(axis=2)
        return np.sqrt((diffs * diffs).sum(axis=2))

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        if X.shape[0] == 0:
            return np.empty(0, dtype=int)
        distances = self._distances(X)
        out = np.empty(X.shape[0], dtype=int)
        for i in range(X.shape[0]):
            order = np.argsort(distances[i], kind="stable")[: self.n_neighbors]
            labels = self.y_[order]
            if self.weights == "uniform":
                votes = np.bincount(labels, minlength=2).astype(float)
            else:
                dk = distances[i, order]
                zero = dk == 0.0
                if zero.any():
                    votes = np.bincount(labels[zero], minlength=2).astype(float)
                else:
                    votes = np.bincount(labels, weights=1.0 / dk, minlength=2)
            out[i] = 1 if votes[1] > votes[0] else 0
        return out

    def to_state(self):
        return {
            "train_features": self.X_.tolist(),
            "train_labels": self.y_.tolist(),
        }

    @classmethod
    def from_state(cls, state, **params):
        model = cls(**params)
        model.X_ = np.asarray(state["train_features"], dtype=float)
        model.y_ = np.asarray(state["train_labels"], dtype=int)
        return model
