"""Soft-margin SVM trained by simplified sequential minimal optimization.

Labels are mapped to {-1, +1} internally; sweeps over the training set stop
at the first pass that changes no multiplier pair, capped at 1000 sweeps.
gamma='scale' resolves to 1 / (n_features * mean per-feature variance).
"""

from __future__ import annotations

import numpy as np

_TOL = 1e-3
_MAX_SWEEPS = 1000
_MIN_ALPHA_STEP = 1e-5


def resolve_gamma(gamma, X) -> float:
    if gamma == "scale":
        mean_var = float(np.var(X, axis=0).mean())
        if mean_var == 0.0:
            return 1.0
        return 1.0 / (X.shape[1] * mean_var)
    return float(gamma)


def _kernel_matrix(A, B, kernel, gamma_value):
    if kernel == "linear":
        return A @ B.T
    sq = (
        (A * A).sum(axis=1)[:, None]
        + (B * B).sum(axis=1)[None, :]
        - 2.0 * (A @ B.T)
    )
    return np.exp(-gamma_value * np.maximum(sq, 0.0))


class SvmClassifier:
    def __init__(self, C=1.0, gamma="scale", kernel="rbf", seed=0):
        if C <= 0:
            raise ValueError("C must be positive")
        if kernel not in ("linear", "rbf"):
            raise ValueError("kernel must be 'linear' or 'rbf'")
        if gamma != "scale" and float(gamma) <= 0:
            raise ValueError("gamma must be 'scale' or a positive real")
        self.C = C
        self.gamma = gamma
        self.kernel = kernel
        self.seed = seed
        self.X_ = None
        self.y_signed_ = None
        self.alphas_ = None
        self.b_ = 0.0
        self.gamma_value_ = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y01 = np.asarray(y, dtype=int)
        if y01.min(initial=1) == y01.max(initial=0):
            raise ValueError("SVM needs both classes present")
        y = 2.0 * y01 - 1.0
        n = X.shape[0]
        self.gamma_value_ = resolve_gamma(self.gamma, X)
        K = _kernel_matrix(X, X, self.kernel, self.gamma_value_)
        alphas = np.zeros(n)
        b = 0.0
        C = self.C
        rng = np.random.default_rng(self.seed)
        # cached margins sum_k alpha_k y_k K(x_k, .), updated incrementally on
        # every multiplier change so each examination is O(1)
        margins = np.zeros(n)

        for _ in range(_MAX_SWEEPS):
            changed = 0
            for i in range(n):
                Ei = margins[i] + b - y[i]
                if not (
                    (y[i] * Ei < -_TOL and alphas[i] < C)
                    or (y[i] * Ei > _TOL and alphas[i] > 0)
                ):
                    continue
                j = int(rng.integers(n - 1))
                if j >= i:
                    j += 1
                Ej = margins[j] + b - y[j]
                ai_old, aj_old = alphas[i], alphas[j]
                if y[i] != y[j]:
                    L = max(0.0, aj_old - ai_old)
                    H = min(C, C + aj_old - ai_old)
                else:
                    L = max(0.0, ai_old + aj_old - C)
                    H = min(C, ai_old + aj_old)
                if L == H:
                    continue
                eta = 2.0 * K[i, j] - K[i, i] - K[j, j]
                if eta >= 0.0:
                    continue
                aj = aj_old - y[j] * (Ei - Ej) / eta
                aj = min(H, max(L, aj))
                if abs(aj - aj_old) < _MIN_ALPHA_STEP:
                    continue
                ai = ai_old + y[i] * y[j] * (aj_old - aj)
                b1 = b - Ei - y[i] * (ai - ai_old) * K[i, i] - y[j] * (aj - aj_old) * K[i, j]
                b2 = b - Ej - y[i] * (ai - ai_old) * K[i, j] - y[j] * (aj - aj_old) * K[j, j]
                alphas[i], alphas[j] = ai, aj
                margins += (ai - ai_old) * y[i] * K[:, i] + (aj - aj_old) * y[j] * K[:, j]
                if 0.0 < ai < C:
                    b = b1
                elif 0.0 < aj < C:
                    b = b2
                else:
                    b = (b1 + b2) / 2.0
                changed += 1
            if changed == 0:
                break

        self.X_ = X
        self.y_signed_ = y
        self.alphas_ = alphas
        self.b_ = b
        return self

    def decision_function(self, X):
        X = np.asarray(X, dtype=float)
        K = _kernel_matrix(X, self.X_, self.kernel, self.gamma_value_)
        return K @ (self.alphas_ * self.y_signed_) + self.b_

    def predict(self, X):
        if np.asarray(X).shape[0] == 0:
            return np.empty(0, dtype=int)
        return (self.decision_function(X) > 0.0).astype(int)

    def to_state(self):
        keep = self.alphas_ != 0.0  # dropping zero multipliers leaves f(x) unchanged
        return {
            "support_features": self.X_[keep].tolist(),
            "support_y": self.y_signed_[keep].tolist(),
            "alphas": self.alphas_[keep].tolist(),
            "b": self.b_,
            "gamma_value": self.gamma_value_,
        }

    @classmethod
    def from_state(cls, state, **params):
        model = cls(**params)
        model.X_ = np.asarray(state["support_features"], dtype=float)
        model.y_signed_ = np.asarray(state["support_y"], dtype=float)
        model.alphas_ = np.asarray(state["alphas"], dtype=float)
        model.b_ = state["b"]
        model.gamma_value_ = state["gamma_value"]
        return model
