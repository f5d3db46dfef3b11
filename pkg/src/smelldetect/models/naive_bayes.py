"""Gaussian naive Bayes with max-variance-proportional smoothing."""

from __future__ import annotations

import math

import numpy as np


class GaussianNaiveBayes:
    """Per-class Gaussian densities with a shared variance floor.

    Every per-class variance is increased by var_smoothing times the largest
    per-feature variance of the whole training set, keeping densities finite
    for constant features.  Prediction is the argmax of log prior plus summed
    log densities; ties go to label 0.
    """

    def __init__(self, var_smoothing=1e-9):
        if var_smoothing <= 0:
            raise ValueError("var_smoothing must be positive")
        self.var_smoothing = var_smoothing
        self.theta_ = None
        self.var_ = None
        self.log_priors_ = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        if y.min(initial=1) == y.max(initial=0):
            raise ValueError("GaussianNaiveBayes needs both classes present")
        scale = float(np.var(X, axis=0).max())
        if scale == 0.0:
            scale = 1.0  # every column constant; fall back to a unit scale
        epsilon = self.var_smoothing * scale
        self.theta_ = np.empty((2, X.shape[1]))
        self.var_ = np.empty((2, X.shape[1]))
        self.log_priors_ = np.empty(2)
        for c in (0, 1):
            rows = X[y == c]
            self.theta_[c] = rows.mean(axis=0)
            self.var_[c] = np.var(rows, axis=0) + epsilon
            self.log_priors_[c] = math.log(rows.shape[0] / X.shape[0])
        return self

    def _joint_log_likelihood(self, X):
        jll = np.empty((X.shape[0], 2))
        for c in (0, 1):
            log_norm = -0.5 * np.log(2.0 * np.pi * self.var_[c])
            sq = (X - self.theta_[c]) ** 2 / (2.0 * self.var_[c])
            jll[:, c] = self.log_priors_[c] + (log_norm - sq).sum(axis=1)
        return jll

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        if X.shape[0] == 0:
            return np.empty(0, dtype=int)
        jll = self._joint_log_likelihood(X)
        return (jll[:, 1] > jll[:, 0]).astype(int)

    def to_state(self):
        return {
            "theta": self.theta_.tolist(),
            "var": self.var_.tolist(),
            "log_priors": self.log_priors_.tolist(),
        }

    @classmethod
    def from_state(cls, state, **params):
        model = cls(**params)
        model.theta_ = np.asarray(state["theta"], dtype=float)
        model.var_ = np.asarray(state["var"], dtype=float)
        model.log_priors_ = np.asarray(state["log_priors"], dtype=float)
        return model
