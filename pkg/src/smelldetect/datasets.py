"""Loading, imputation, and stratified splitting of per-smell metric datasets.

Two on-disk formats are supported: the ARFF subset the public code-smell
metric datasets ship in ('%' comments, ``@relation``, ``@attribute <name> numeric``,
``@attribute <name> {v1,v2}``, ``@data``, comma-separated rows, '?' for a
missing cell) and RFC-4180 CSV with a header row.  Missing feature cells are
carried as NaN until :func:`impute_missing` replaces them with column means.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SMELL_KINDS = (
    "GodClass",
    "DataClass",
    "FeatureEnvy",
    "LongMethod",
    "LongParameterList",
    "SwitchStatements",
)

# Label texts that mean "smelly" when no explicit positive label is given.
POSITIVE_LABEL_ALIASES = frozenset({"true", "1", "yes", "smelly"})

_NEGATIVE_TEXT = {"true": "false", "1": "0", "yes": "no", "smelly": "not_smelly"}


class DataError(Exception):
    """A dataset file is unreadable or internally inconsistent."""


class ArffParseError(DataError):
    """Malformed ARFF content; carries the 1-based line number when known."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class LabelError(DataError):
    """A label cell holds a value outside the declared/known domain."""


def _normalize_label(text: str) -> str:
    return text.strip().casefold()


@dataclass(frozen=True)
class DatasetSchema:
    """Column naming for one smell dataset: metric names plus the label column."""

    feature_names: tuple[str, ...]
    label_name: str
    positive_label: str

    def __post_init__(self):
        names = tuple(self.feature_names)
        object.__setattr__(self, "feature_names", names)
        if any(not n for n in names):
            raise ValueError("feature names must be non-empty")
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate feature names: {dupes}")
        if self.label_name in names:
            raise ValueError(f"label column {self.label_name!r} also appears as a feature")

    def subset(self, indices: tuple[int, ...]) -> "DatasetSchema":
        return DatasetSchema(
            feature_names=tuple(self.feature_names[j] for j in indices),
            label_name=self.label_name,
            positive_label=self.positive_label,
        )


@dataclass(frozen=True)
class LabeledDataset:
    """Immutable feature matrix + binary labels for one code smell.

    ``features`` is (n_rows, n_features) float64; NaN marks a missing cell in
    the raw (pre-imputation) form.  ``labels`` is (n_rows,) with 1 = smelly.
    """

    schema: DatasetSchema
    features: np.ndarray
    labels: np.ndarray
    smell_kind: str = "GodClass"

    def __post_init__(self):
        X = np.array(self.features, dtype=float)
        y = np.array(self.labels, dtype=int)
        if X.ndim != 2:
            raise ValueError("features must be a 2-D matrix")
        if X.shape[0] != y.shape[0]:
            raise ValueError(
                f"row count mismatch: {X.shape[0]} feature rows vs {y.shape[0]} labels"
            )
        if X.shape[1] != len(self.schema.feature_names):
            raise ValueError(
                f"{X.shape[1]} feature columns but schema names {len(self.schema.feature_names)}"
            )
        if y.size and not np.all((y == 0) | (y == 1)):
            raise ValueError("labels must be 0/1")
        if np.isinf(X).any():
            raise ValueError("feature values must be finite")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "labels", y)

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def has_missing(self) -> bool:
        return bool(np.isnan(self.features).any())

    def take_rows(self, indices) -> "LabeledDataset":
        return LabeledDataset(
            schema=self.schema,
            features=self.features[indices],
            labels=self.labels[indices],
            smell_kind=self.smell_kind,
        )

    def take_columns(self, indices: tuple[int, ...]) -> "LabeledDataset":
        return LabeledDataset(
            schema=self.schema.subset(indices),
            features=self.features[:, list(indices)],
            labels=self.labels,
            smell_kind=self.smell_kind,
        )


@dataclass(frozen=True)
class SplitPair:
    """Disjoint stratified train/test partition of one dataset."""

    train: LabeledDataset
    test: LabeledDataset
    seed: int


# ---------------------------------------------------------------------------
# ARFF
# ---------------------------------------------------------------------------

def _split_arff_declaration(rest: str):
    """Split '@attribute <name> <type>' remainder into (name, type_text)."""
    rest = rest.strip()
    if not rest:
        return None
    if rest[0] in "'\"":
        quote = rest[0]
        end = rest.find(quote, 1)
        if end < 0:
            return None
        return rest[1:end], rest[end + 1:].strip()
    parts = rest.split(None, 1)
    if len(parts) != 2:
        return None
    return parts[0], parts[1].strip()


def load_arff(
    path,
    label_attribute: str | None = None,
    positive_label: str | None = None,
    smell_kind: str = "GodClass",
) -> LabeledDataset:
    """Parse an ARFF file into a raw (possibly missing-valued) dataset.

    The label column is the last declared attribute unless ``label_attribute``
    names another one; it must be nominal.  Every other attribute must be
    numeric.  ``positive_label`` defaults to whichever declared label value
    normalizes to one of true/1/yes/smelly.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"dataset file not found: {path}")

    attr_names: list[str] = []
    attr_domains: list[tuple[str, ...] | None] = []  # None = numeric
    data_rows: list[tuple[int, list[str]]] = []
    in_data = False
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            if not in_data:
                lowered = line.casefold()
                if lowered.startswith("@relation"):
                    continue
                if lowered.startswith("@attribute"):
                    parsed = _split_arff_declaration(line[len("@attribute"):])
                    if parsed is None:
                        raise ArffParseError("malformed @attribute declaration", lineno)
                    name, type_text = parsed
                    if type_text.startswith("{"):
                        if not type_text.endswith("}"):
                            raise ArffParseError(
                                "unterminated nominal domain in @attribute", lineno
                            )
                        values = tuple(v.strip().strip("'\"") for v in type_text[1:-1].split(","))
                        if not all(values):
                            raise ArffParseError("empty value in nominal domain", lineno)
                        attr_domains.append(values)
                    elif type_text.casefold() in ("numeric", "real", "integer"):
                        attr_domains.append(None)
                    else:
                        raise ArffParseError(
                            f"unsupported attribute type {type_text!r}", lineno
                        )
                    attr_names.append(name)
                    continue
                if lowered.startswith("@data"):
                    if not attr_names:
                        raise ArffParseError("@data before any @attribute", lineno)
                    in_data = True
                    continue
                raise ArffParseError(f"unrecognized header line {line!r}", lineno)
            else:
                cells = [c.strip().strip("'\"") for c in line.split(",")]
                if len(cells) != len(attr_names):
                    raise ArffParseError(
                        f"row has {len(cells)} cells, expected {len(attr_names)}", lineno
                    )
                data_rows.append((lineno, cells))

    if not in_data:
        raise ArffParseError("no @data section found")

    if label_attribute is None:
        label_idx = len(attr_names) - 1
    else:
        try:
            label_idx = attr_names.index(label_attribute)
        except ValueError:
            raise DataError(
                f"label attribute {label_attribute!r} not declared; "
                f"attributes are {attr_names}"
            ) from None
    label_domain = attr_domains[label_idx]
    if label_domain is None:
        raise ArffParseError(
            f"class attribute {attr_names[label_idx]!r} must be nominal"
        )
    for j, domain in enumerate(attr_domains):
        if j != label_idx and domain is not None:
            raise ArffParseError(
                f"feature attribute {attr_names[j]!r} must be numeric"
            )

    if positive_label is None:
        inferred = [v for v in label_domain if _normalize_label(v) in POSITIVE_LABEL_ALIASES]
        if not inferred:
            raise LabelError(
                f"cannot infer the positive label from domain {label_domain}; "
                "pass positive_label explicitly"
            )
        positive_label = inferred[0]

    feature_idx = [j for j in range(len(attr_names)) if j != label_idx]
    normalized_domain = {_normalize_label(v) for v in label_domain}
    positive_norm = _normalize_label(positive_label)

    n = len(data_rows)
    X = np.empty((n, len(feature_idx)))
    y = np.empty(n, dtype=int)
    for i, (lineno, cells) in enumerate(data_rows):
        for out_j, j in enumerate(feature_idx):
            cell = cells[j]
            if cell == "?":
                X[i, out_j] = np.nan
                continue
            try:
                X[i, out_j] = float(cell)
            except ValueError:
                raise ArffParseError(
                    f"non-numeric value {cell!r} in attribute {attr_names[j]!r}", lineno
                ) from None
        label_cell = cells[label_idx]
        norm = _normalize_label(label_cell)
        if label_cell == "?" or norm not in normalized_domain:
            raise LabelError(
                f"line {lineno}: unknown label value {label_cell!r}; "
                f"declared domain is {label_domain}"
            )
        y[i] = 1 if norm == positive_norm else 0

    schema = DatasetSchema(
        feature_names=tuple(attr_names[j] for j in feature_idx),
        label_name=attr_names[label_idx],
        positive_label=positive_label,
    )
    return LabeledDataset(schema=schema, features=X, labels=y, smell_kind=smell_kind)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def load_csv(
    path,
    label_column: str,
    positive_label: str,
    smell_kind: str = "GodClass",
) -> LabeledDataset:
    """Load an RFC-4180 CSV with a header row into a raw dataset.

    Empty feature cells (or '?') are recorded as missing.  Label matching is
    case-insensitive after trimming; rows whose label differs from
    ``positive_label`` get label 0.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"dataset file not found: {path}")

    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: missing header row") from None
        rows = list(reader)

    if label_column not in header:
        raise DataError(
            f"label column {label_column!r} not in header; columns are {header}"
        )
    label_idx = header.index(label_column)
    feature_idx = [j for j in range(len(header)) if j != label_idx]

    n = len(rows)
    X = np.empty((n, len(feature_idx)))
    y = np.empty(n, dtype=int)
    positive_norm = _normalize_label(positive_label)
    for i, cells in enumerate(rows):
        if len(cells) != len(header):
            raise DataError(
                f"{path}: data row {i + 1} has {len(cells)} cells, expected {len(header)}"
            )
        for out_j, j in enumerate(feature_idx):
            cell = cells[j].strip()
            if cell in ("", "?"):
                X[i, out_j] = np.nan
                continue
            try:
                X[i, out_j] = float(cell)
            except ValueError:
                raise DataError(
                    f"{path}: non-numeric value {cell!r} in column {header[j]!r}, "
                    f"data row {i + 1}"
                ) from None
        label_cell = cells[label_idx].strip()
        if not label_cell:
            raise LabelError(f"{path}: empty label in data row {i + 1}")
        y[i] = 1 if _normalize_label(label_cell) == positive_norm else 0

    if n and not y.any():
        warnings.warn(
            f"positive label {positive_label!r} never occurs in {path}; all labels are 0",
            stacklevel=2,
        )

    schema = DatasetSchema(
        feature_names=tuple(header[j] for j in feature_idx),
        label_name=label_column,
        positive_label=positive_label,
    )
    return LabeledDataset(schema=schema, features=X, labels=y, smell_kind=smell_kind)


def write_csv(dataset: LabeledDataset, path) -> None:
    """Write a dataset so that load_csv reads back bit-identical values."""
    positive = dataset.schema.positive_label
    negative = _NEGATIVE_TEXT.get(_normalize_label(positive), f"not_{positive}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(dataset.schema.feature_names) + [dataset.schema.label_name])
        for row, label in zip(dataset.features, dataset.labels):
            cells = ["" if math.isnan(v) else repr(float(v)) for v in row]
            cells.append(positive if label == 1 else negative)
            writer.writerow(cells)


# ---------------------------------------------------------------------------
# Imputation
# ---------------------------------------------------------------------------

def fit_column_means(dataset: LabeledDataset) -> np.ndarray:
    """Per-column arithmetic means over non-missing cells.

    Raises DataError naming the column when a column is entirely missing.
    """
    X = dataset.features
    means = np.empty(X.shape[1])
    for j in range(X.shape[1]):
        col = X[:, j]
        present = ~np.isnan(col)
        if not present.any():
            raise DataError(
                f"column {dataset.schema.feature_names[j]!r} has no non-missing values"
            )
        means[j] = col[present].mean()
    return means


def apply_imputation(dataset: LabeledDataset, means: np.ndarray) -> LabeledDataset:
    """Fill missing cells with the given per-column means; other cells untouched."""
    X = dataset.features.copy()
    mask = np.isnan(X)
    if mask.any():
        X[mask] = np.broadcast_to(means, X.shape)[mask]
    return LabeledDataset(
        schema=dataset.schema, features=X, labels=dataset.labels,
        smell_kind=dataset.smell_kind,
    )


def impute_missing(dataset: LabeledDataset) -> LabeledDataset:
    """Replace every missing cell by its column mean over the non-missing cells."""
    return apply_imputation(dataset, fit_column_means(dataset))


# ---------------------------------------------------------------------------
# Counting and splitting
# ---------------------------------------------------------------------------

def class_counts(dataset: LabeledDataset) -> tuple[int, int]:
    """(positives, negatives) tallies."""
    positives = int(dataset.labels.sum())
    return positives, dataset.n_rows - positives


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def stratified_split(dataset: LabeledDataset, test_fraction: float, seed: int) -> SplitPair:
    """Seeded stratified partition into train and test.

    Per-class test counts are round-half-up(class_count * test_fraction); when
    their sum falls one short of round-half-up(total * test_fraction), one
    extra test instance is taken from the class with the larger test count
    (ties toward label 0).  Assignment within a class is a seeded uniform
    shuffle, so the same seed always yields the same split.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    y = dataset.labels
    class_indices = {label: np.flatnonzero(y == label) for label in (0, 1)}
    for label, idx in class_indices.items():
        if idx.size < 2:
            raise ValueError(
                f"class {label} has {idx.size} instance(s); need at least 2 per class"
            )

    n_test = {
        label: _round_half_up(idx.size * test_fraction)
        for label, idx in class_indices.items()
    }
    total_target = _round_half_up(dataset.n_rows * test_fraction)
    shortfall = total_target - sum(n_test.values())
    if shortfall > 0:
        # tie toward label 0 via max() scanning 0 first
        grow = max((0, 1), key=lambda label: n_test[label])
        n_test[grow] += shortfall

    for label in (0, 1):
        if n_test[label] == 0:
            raise ValueError(f"class {label} would receive 0 test instances")
        if n_test[label] >= class_indices[label].size:
            raise ValueError(f"class {label} would receive 0 train instances")

    rng = np.random.default_rng(seed)
    test_rows = []
    train_rows = []
    for label in (0, 1):
        perm = rng.permutation(class_indices[label])
        test_rows.append(perm[: n_test[label]])
        train_rows.append(perm[n_test[label]:])
    test_idx = np.sort(np.concatenate(test_rows))
    train_idx = np.sort(np.concatenate(train_rows))
    return SplitPair(
        train=dataset.take_rows(train_idx),
        test=dataset.take_rows(test_idx),
        seed=seed,
    )
