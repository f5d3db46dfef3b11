"""Shared helpers for building small in-memory datasets."""

from __future__ import annotations

import numpy as np
import pytest

from smelldetect.datasets import DatasetSchema, LabeledDataset


def make_dataset(X, y, names=None, smell="GodClass", label_name="is_smell",
                 positive="true") -> LabeledDataset:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if names is None:
        names = tuple(f"m{j}" for j in range(X.shape[1]))
    schema = DatasetSchema(tuple(names), label_name, positive)
    return LabeledDataset(schema=schema, features=X, labels=np.asarray(y, dtype=int),
                          smell_kind=smell)


def random_dataset(rng, n_rows=30, n_features=4, shift=2.0) -> LabeledDataset:
    """Small two-class dataset with a mild class shift on every feature."""
    y = rng.integers(0, 2, size=n_rows)
    while y.min() == y.max():  # both classes must appear
        y = rng.integers(0, 2, size=n_rows)
    X = rng.normal(size=(n_rows, n_features)) + shift * y[:, None]
    return make_dataset(X, y)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
