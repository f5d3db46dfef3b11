"""Synthetic stand-in datasets with the published per-smell class counts.

Used by the demo scripts and the acceptance suite when the real metric
datasets are not available.  Each smell gets two strongly label-correlated
signature metrics (the ones its selection step is expected to keep), a few
weak ones, and noise columns; a small fraction of feature cells is missing.
"""

from __future__ import annotations

import numpy as np

from .datasets import LabeledDataset, DatasetSchema
from .reference import RAW_CLASS_COUNTS

SIGNATURE_METRICS = {
    "GodClass": ("LOC type", "WMC type"),
    "DataClass": ("LCOM5", "NOPK project"),
    "FeatureEnvy": ("FDP method", "ATFD method"),
    "LongMethod": ("MAXNESTING method", "LOC method"),
    "LongParameterList": ("NOP method", "LOC method"),
    "SwitchStatements": ("LOC method", "MAXNESTING method"),
}

_WEAK_METRICS = ("CBO type", "RFC type")
_NOISE_METRICS = (
    "NOM type", "NOA type", "FANOUT method", "CYCLO method",
    "NOLV method", "ATLD method", "CFNAMM type", "WOC type",
)


def synthetic_dataset(smell_kind: str, seed: int = 0, missing_rate: float = 0.01,
                      counts: tuple[int, int] | None = None) -> LabeledDataset:
    """Raw (unimputed) dataset whose class counts match the published ones."""
    if counts is None:
        counts = RAW_CLASS_COUNTS[smell_kind]
    n_pos, n_neg = counts
    n = n_pos + n_neg
    rng = np.random.default_rng(seed)

    signature = SIGNATURE_METRICS[smell_kind]
    names = signature + _WEAK_METRICS + _NOISE_METRICS
    labels = np.concatenate([np.ones(n_pos, dtype=int), np.zeros(n_neg, dtype=int)])
    order = rng.permutation(n)
    labels = labels[order]

    X = np.empty((n, len(names)))
    pos = labels == 1
    for j, name in enumerate(names):
        base = rng.lognormal(mean=2.0, sigma=0.5, size=n)
        if name in signature:
            shift = rng.lognormal(mean=3.2, sigma=0.4, size=n)
            X[:, j] = np.where(pos, shift, base)
        elif name in _WEAK_METRICS:
            X[:, j] = base + np.where(pos, rng.normal(2.0, 2.0, size=n), 0.0)
        else:
            X[:, j] = base
    X = np.round(X, 3)

    if missing_rate > 0.0:
        holes = rng.random(X.shape) < missing_rate
        X[holes] = np.nan

    schema = DatasetSchema(
        feature_names=names, label_name="is_smell", positive_label="true"
    )
    return LabeledDataset(schema=schema, features=X, labels=labels, smell_kind=smell_kind)


def write_arff(dataset: LabeledDataset, path) -> None:
    """Write the ARFF subset load_arff reads (quoted names, '?' for missing)."""
    lines = [f"@relation {dataset.smell_kind}", ""]
    for name in dataset.schema.feature_names:
        quoted = f"'{name}'" if " " in name else name
        lines.append(f"@attribute {quoted} numeric")
    lines.append(f"@attribute {dataset.schema.label_name} {{true,false}}")
    lines.append("")
    lines.append("@data")
    for row, label in zip(dataset.features, dataset.labels):
        cells = ["?" if np.isnan(v) else repr(float(v)) for v in row]
        cells.append("true" if label == 1 else "false")
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
