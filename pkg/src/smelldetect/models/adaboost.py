"""SAMME boosting over depth-1 decision stumps."""

from __future__ import annotations

import math

import numpy as np

from .tree import DecisionTreeClassifier

_N_CLASSES = 2
_ERROR_FLOOR = 1e-10  # stand-in error for a perfect stump; caps its stage weight


def samme_stage_weight(error: float, learning_rate: float, n_classes: int = _N_CLASSES) -> float:
    """learning_rate * (ln((1 - e)/e) + ln(K - 1)), with e floored for e = 0."""
    e = max(error, _ERROR_FLOOR)
    return learning_rate * (math.log((1.0 - e) / e) + math.log(n_classes - 1))


class AdaBoostClassifier:
    """Weighted stumps combined by SAMME stage weights.

    Rounds stop early when a stump is perfect (kept, with a capped weight) or
    no better than chance (discarded).  Instance weights are renormalized to
    sum 1 after every completed round; the per-round sums are recorded in
    ``weight_sums_`` for invariant checks.
    """

    def __init__(self, n_estimators=50, learning_rate=1.0, algorithm="SAMME", seed=0):
        if n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")
        if learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if algorithm != "SAMME":
            raise ValueError(f"unsupported algorithm {algorithm!r}; only SAMME")
        self.n_estimators = n_estimators
        self.learning_rate = learning_rate
        self.algorithm = algorithm
        self.seed = seed
        self.stumps_ = []
        self.stage_weights_ = []
        self.stage_errors_ = []
        self.weight_sums_ = []
        self.fallback_label_ = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        if y.min(initial=1) == y.max(initial=0):
            raise ValueError("AdaBoost needs both classes present")
        n = X.shape[0]
        w = np.full(n, 1.0 / n)
        self.stumps_, self.stage_weights_ = [], []
        self.stage_errors_, self.weight_sums_ = [], []
        self.fallback_label_ = None

        for _ in range(self.n_estimators):
            stump = DecisionTreeClassifier(max_depth=1, seed=self.seed).fit(
                X, y, sample_weight=w
            )
            miss = stump.predict(X) != y
            error = float(w[miss].sum())
            if error >= 1.0 - 1.0 / _N_CLASSES:
                break  # no better than chance: discard and stop
            alpha = samme_stage_weight(error, self.learning_rate)
            self.stumps_.append(stump)
            self.stage_weights_.append(alpha)
            self.stage_errors_.append(error)
            if error <= 0.0:
                self.weight_sums_.append(float(w.sum()))
                break
            w = w * np.exp(alpha * miss)
            w = w / w.sum()
            self.weight_sums_.append(float(w.sum()))

        if not self.stumps_:
            # first stump was already no better than chance
            counts = np.bincount(y, minlength=2)
            self.fallback_label_ = 1 if counts[1] > counts[0] else 0
        return self

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        if X.shape[0] == 0:
            return np.empty(0, dtype=int)
        if self.fallback_label_ is not None:
            return np.full(X.shape[0], self.fallback_label_, dtype=int)
        scores = np.zeros((X.shape[0], _N_CLASSES))
        for stump, alpha in zip(self.stumps_, self.stage_weights_):
            pred = stump.predict(X)
            scores[np.arange(X.shape[0]), pred] += alpha
        return (scores[:, 1] > scores[:, 0]).astype(int)

    def to_state(self):
        return {
            "stumps": [s.to_state() for s in self.stumps_],
            "stage_weights": list(self.stage_weights_),
            "fallback_label": self.fallback_label_,
        }

    @classmethod
    def from_state(cls, state, **params):
        model = cls(**params)
        model.stumps_ = [
            DecisionTreeClassifier.from_state(doc, max_depth=1)
            for doc in state["stumps"]
        ]
        model.stage_weights_ = list(state["stage_weights"])
        model.fallback_label_ = state["fallback_label"]
        return model
