"""Binary-classification metrics, reference comparisons, and report rendering.

The positive class is "smelly" everywhere.  Ratios that come out 0/0 are
reported as 0 and flagged as degenerate instead of raising, so batch runs
survive pathological folds.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .datasets import SMELL_KINDS
from .reference import MODEL_ORDER, reference_row


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        for name in ("tp", "fp", "fn", "tn"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 0:
                raise ValueError(f"{name} must be a non-negative count, got {v!r}")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    matrix: ConfusionMatrix
    smell_kind: str = ""
    model_kind: str = ""
    tuned: bool = False
    degenerate: tuple = ()
    """Names of ratios that were 0/0 and reported as 0."""


@dataclass(frozen=True)
class ComparisonRow:
    smell_kind: str
    model_kind: str
    tuned: bool
    observed: dict
    reference: dict
    delta: dict


def confusion(y_true, y_pred) -> ConfusionMatrix:
    y_true = np.asarray(y_true, dtype=int)
    y_pred = np.asarray(y_pred, dtype=int)
    if y_true.shape != y_pred.shape:
        raise ValueError(f"length mismatch: {y_true.shape} vs {y_pred.shape}")
    if y_true.size < 1:
        raise ValueError("need at least one evaluated instance")
    return ConfusionMatrix(
        tp=int(np.sum((y_true == 1) & (y_pred == 1))),
        fp=int(np.sum((y_true == 0) & (y_pred == 1))),
        fn=int(np.sum((y_true == 1) & (y_pred == 0))),
        tn=int(np.sum((y_true == 0) & (y_pred == 0))),
    )


def metrics(matrix: ConfusionMatrix, smell_kind: str = "", model_kind: str = "",
            tuned: bool = False) -> MetricsReport:
    if matrix.total == 0:
        raise ValueError("empty confusion matrix")
    degenerate = []

    def ratio(num, den, name):
        if den == 0:
            degenerate.append(name)
            return 0.0
        return num / den

    accuracy = (matrix.tp + matrix.tn) / matrix.total
    precision = ratio(matrix.tp, matrix.tp + matrix.fp, "precision")
    recall = ratio(matrix.tp, matrix.tp + matrix.fn, "recall")
    if precision + recall == 0.0:
        degenerate.append("f1")
        f1 = 0.0
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return MetricsReport(
        accuracy=accuracy, precision=precision, recall=recall, f1=f1,
        matrix=matrix, smell_kind=smell_kind, model_kind=model_kind,
        tuned=tuned, degenerate=tuple(degenerate),
    )


def compare_to_reference(report: MetricsReport) -> ComparisonRow:
    ref = reference_row(report.smell_kind, report.model_kind, report.tuned)
    observed = {
        "accuracy": 100.0 * report.accuracy,
        "precision": 100.0 * report.precision,
        "recall": 100.0 * report.recall,
        "f1": 100.0 * report.f1,
    }
    reference = {
        "accuracy": ref.accuracy,
        "precision": ref.precision,
        "recall": ref.recall,
        "f1": ref.f1,
    }
    delta = {k: observed[k] - reference[k] for k in observed}
    return ComparisonRow(
        smell_kind=report.smell_kind, model_kind=report.model_kind,
        tuned=report.tuned, observed=observed, reference=reference, delta=delta,
    )


def _sort_key(report: MetricsReport):
    smell = SMELL_KINDS.index(report.smell_kind) if report.smell_kind in SMELL_KINDS else len(SMELL_KINDS)
    model = MODEL_ORDER.index(report.model_kind) if report.model_kind in MODEL_ORDER else len(MODEL_ORDER)
    return (smell, model, report.tuned)


def _row_cells(report: MetricsReport):
    try:
        comparison = compare_to_reference(report)
    except KeyError:
        comparison = None
    cells = {
        "smell": report.smell_kind,
        "model": report.model_kind,
        "tuned": "yes" if report.tuned else "no",
        "tp": report.matrix.tp, "fp": report.matrix.fp,
        "fn": report.matrix.fn, "tn": report.matrix.tn,
    }
    for name in ("accuracy", "precision", "recall", "f1"):
        obs = 100.0 * getattr(report, name)
        cells[f"{name}_obs"] = f"{obs:.2f}"
        if comparison is not None:
            cells[f"{name}_ref"] = f"{comparison.reference[name]:.2f}"
            cells[f"{name}_delta"] = f"{comparison.delta[name]:+.2f}"
        else:
            cells[f"{name}_ref"] = ""
            cells[f"{name}_delta"] = ""
    return cells


_COLUMNS = (
    ["smell", "model", "tuned"]
    + [f"{m}_{part}" for m in ("accuracy", "precision", "recall", "f1")
       for part in ("obs", "ref", "delta")]
    + ["tp", "fp", "fn", "tn"]
)


def render_report(reports, fmt: str) -> str:
    """Render metric rows (with obs/ref/delta columns) as markdown, csv, or json.

    Rows are ordered by (smell, model, tuned); rendering the same rows twice
    yields byte-identical documents.
    """
    if not reports:
        raise ValueError("no rows to render")
    ordered = sorted(reports, key=_sort_key)
    rows = [_row_cells(r) for r in ordered]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_COLUMNS)
        for row in rows:
            writer.writerow([row[c] for c in _COLUMNS])
        return buf.getvalue()
    if fmt == "markdown":
        lines = [
            "| " + " | ".join(_COLUMNS) + " |",
            "| " + " | ".join("---" for _ in _COLUMNS) + " |",
        ]
        for row in rows:
            lines.append("| " + " | ".join(str(row[c]) for c in _COLUMNS) + " |")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"
    raise ValueError(f"unknown report format {fmt!r}; use markdown, csv, or json")
