"""Pearson-correlation feature selection against the binary label.

Features whose absolute correlation with the 0/1 label exceeds the mean of
all absolute correlations are kept (strictly greater; a strongly negative
correlation counts the same as a positive one).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .datasets import LabeledDataset


@dataclass(frozen=True)
class FeatureSelection:
    """Outcome of the correlation-threshold rule for one dataset."""

    correlations: tuple[float, ...]
    threshold: float
    selected: tuple[int, ...]
    selected_names: tuple[str, ...]
    degenerate: tuple[int, ...] = ()
    fallback: bool = False
    """True when the strict rule selected nothing and the top feature was kept."""


def pearson_correlation(xs, ys) -> float:
    """Product-moment correlation; 0.0 when either series has zero variance."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"series lengths differ: {x.shape} vs {y.shape}")
    if x.size < 2:
        raise ValueError("correlation needs at least 2 points")
    dx = x - x.mean()
    dy = y - y.mean()
    sx2 = float(dx @ dx)
    sy2 = float(dy @ dy)
    if sx2 == 0.0 or sy2 == 0.0:
        return 0.0
    r = float(dx @ dy) / math.sqrt(sx2 * sy2)
    return max(-1.0, min(1.0, r))


def select_features(dataset: LabeledDataset) -> tuple[FeatureSelection, LabeledDataset]:
    """Keep features with |r| strictly above the mean |r|; reduce the dataset.

    The labels enter as 0/1 values (point-biserial).  When the strict rule
    selects nothing (all |r| equal), the single highest-|r| feature is kept
    and a warning is issued.
    """
    if dataset.n_features < 2:
        raise ValueError("feature selection needs at least 2 features")
    labels = dataset.labels
    if labels.min(initial=1) == labels.max(initial=0):
        raise ValueError("feature selection needs both classes present")

    correlations = []
    degenerate = []
    for j in range(dataset.n_features):
        col = dataset.features[:, j]
        if np.all(col == col[0]):
            degenerate.append(j)
            correlations.append(0.0)
        else:
            correlations.append(pearson_correlation(col, labels))
    if len(degenerate) == dataset.n_features:
        raise ValueError("all features are constant; nothing to rank")

    abs_r = np.abs(correlations)
    threshold = float(abs_r.mean())
    selected = tuple(int(j) for j in range(dataset.n_features) if abs_r[j] > threshold)
    fallback = False
    if not selected:
        selected = (int(np.argmax(abs_r)),)
        fallback = True
        warnings.warn(
            "no feature exceeded the mean |correlation|; "
            f"keeping the top feature {dataset.schema.feature_names[selected[0]]!r}",
            stacklevel=2,
        )

    result = FeatureSelection(
        correlations=tuple(float(r) for r in correlations),
        threshold=threshold,
        selected=selected,
        selected_names=tuple(dataset.schema.feature_names[j] for j in selected),
        degenerate=tuple(degenerate),
        fallback=fallback,
    )
    return result, dataset.take_columns(selected)
