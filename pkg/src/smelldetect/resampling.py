"""Minority-class balancing via synthetic interpolation (SMOTE)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .datasets import LabeledDataset, class_counts


@dataclass(frozen=True)
class SmoteConfig:
    k_neighbors: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.k_neighbors < 1:
            raise ValueError(f"k_neighbors must be >= 1, got {self.k_neighbors}")


def _minority_neighbor_table(minority: np.ndarray, k: int) -> np.ndarray:
    """Indices of each minority row's k nearest minority neighbors (Euclidean).

    Ties resolve to the lower row index via a stable sort; a row is never its
    own neighbor.
    """
    diffs = minority[:, None, :] - minority[None, :, :]
    distances = np.sqrt((diffs * diffs).sum(axis=2))
    np.fill_diagonal(distances, np.inf)
    order = np.argsort(distances, axis=1, kind="stable")
    return order[:, :k]


def smote_oversample(dataset: LabeledDataset, config: SmoteConfig) -> LabeledDataset:
    """Raise the minority class to the majority count with interpolated rows.

    Each synthetic row is x + u * (x_n - x) for a minority instance x (cycled
    in row order), one of its k nearest minority neighbors x_n, and u drawn
    uniformly from [0, 1].  Original rows are preserved verbatim and come
    first; an already balanced dataset is returned unchanged.
    """
    if dataset.has_missing():
        raise ValueError("impute missing values before resampling")
    positives, negatives = class_counts(dataset)
    if positives == negatives:
        return dataset
    minority_label = 1 if positives < negatives else 0
    minority_count = min(positives, negatives)
    if minority_count == 0:
        raise ValueError("minority class is empty; nothing to interpolate")
    deficit = abs(positives - negatives)

    minority = dataset.features[dataset.labels == minority_label]
    if minority_count == 1:
        synthetic = np.repeat(minority, deficit, axis=0)
    else:
        k = min(config.k_neighbors, minority_count - 1)
        neighbors = _minority_neighbor_table(minority, k)
        rng = np.random.default_rng(config.seed)
        synthetic = np.empty((deficit, dataset.n_features))
        for t in range(deficit):
            i = t % minority_count
            x = minority[i]
            x_n = minority[neighbors[i, rng.integers(k)]]
            u = rng.random()
            synthetic[t] = x + u * (x_n - x)

    features = np.vstack([dataset.features, synthetic])
    labels = np.concatenate(
        [dataset.labels, np.full(deficit, minority_label, dtype=int)]
    )
    return LabeledDataset(
        schema=dataset.schema, features=features, labels=labels,
        smell_kind=dataset.smell_kind,
    )
