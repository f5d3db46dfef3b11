"""JIT-compiled split-scan kernels shared by the tree learners.

Each kernel walks the candidate features in the given (ascending) order and
every boundary between distinct sorted values in ascending threshold order,
keeping the first strictly-better candidate, which realizes the
lowest-feature-index, then lowest-threshold tie-break.  Cumulative sums are
accumulated sequentially (the same order numpy cumsum uses) and parent
totals come from the caller, so results are bit-identical to a plain numpy
scan of the same expressions.

Each kernel returns (feature, threshold); feature is -1 when no split has
strictly positive gain.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def best_split_gini(X, cols, y, w, total_w, parent_w1, min_leaf):
    n = X.shape[0]
    parent_gini = (
        1.0 - (parent_w1 / total_w) ** 2 - ((total_w - parent_w1) / total_w) ** 2
    )
    best_gain = 0.0
    best_feature = -1
    best_thr = 0.0
    for ci in range(cols.shape[0]):
        c = cols[ci]
        col = np.ascontiguousarray(X[:, c])
        order = np.argsort(col, kind="mergesort")
        left_w = 0.0
        left_w1 = 0.0
        for i in range(n - 1):
            idx = order[i]
            left_w += w[idx]
            if y[idx] == 1:
                left_w1 += w[idx]
            xi = col[idx]
            xj = col[order[i + 1]]
            if not xi < xj:
                continue
            n_left = i + 1
            if n_left < min_leaf or n - n_left < min_leaf:
                continue
            right_w = total_w - left_w
            if left_w <= 0.0 or right_w <= 0.0:
                continue
            right_w1 = parent_w1 - left_w1
            gini_l = (
                1.0 - (left_w1 / left_w) ** 2 - ((left_w - left_w1) / left_w) ** 2
            )
            gini_r = (
                1.0 - (right_w1 / right_w) ** 2
                - ((right_w - right_w1) / right_w) ** 2
            )
            gain = (
                parent_gini
                - (left_w / total_w) * gini_l
                - (right_w / total_w) * gini_r
            )
            if gain > best_gain:
                best_gain = gain
                best_feature = c
                best_thr = (xi + xj) / 2.0
    return best_feature, best_thr


@njit(cache=True)
def best_split_sse(X, t, total):
    n, k = X.shape
    parent_proxy = total * total / n
    best_gain = 0.0
    best_feature = -1
    best_thr = 0.0
    for c in range(k):
        col = np.ascontiguousarray(X[:, c])
        order = np.argsort(col, kind="mergesort")
        left = 0.0
        for i in range(n - 1):
            idx = order[i]
            left += t[idx]
            xi = col[idx]
            xj = col[order[i + 1]]
            if not xi < xj:
                continue
            n_left = float(i + 1)
            right = total - left
            gain = left * left / n_left + right * right / (n - n_left) - parent_proxy
            if gain > best_gain:
                best_gain = gain
                best_feature = c
                best_thr = (xi + xj) / 2.0
    return best_feature, best_thr


@njit(cache=True)
def best_split_second_order(X, cols, g, h, G, H, lam, gamma):
    n = X.shape[0]
    parent_term = G * G / (H + lam)
    best_gain = 0.0
    best_feature = -1
    best_thr = 0.0
    for ci in range(cols.shape[0]):
        c = cols[ci]
        col = np.ascontiguousarray(X[:, c])
        order = np.argsort(col, kind="mergesort")
        GL = 0.0
        HL = 0.0
        for i in range(n - 1):
            idx = order[i]
            GL += g[idx]
            HL += h[idx]
            xi = col[idx]
            xj = col[order[i + 1]]
            if not xi < xj:
                continue
            GR = G - GL
            HR = H - HL
            gain = (
                0.5 * (GL * GL / (HL + lam) + GR * GR / (HR + lam) - parent_term)
                - gamma
            )
            if gain > best_gain:
                best_gain = gain
                best_feature = c
                best_thr = (xi + xj) / 2.0
    return best_feature, best_thr
