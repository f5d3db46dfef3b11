"""Command-line entry points: run, tune, eval, reference, inspect.

Configuration comes from a TOML file (--config) with every field
overridable by a flag; flags win.  Exit codes: 0 success, 1 configuration
error, 2 data error, 3 runtime/numeric error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .datasets import DataError, SMELL_KINDS, class_counts, impute_missing
from .evaluation import confusion, metrics, render_report
from .models import MODEL_KINDS, predict
from .models.serialize import load_model
from .pipeline import (
    ConfigError,
    ExperimentConfig,
    load_dataset,
    run_experiment,
    run_tuning,
)
from .reference import reference_row
from .selection import select_features

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse usage problems are config errors
        raise ConfigError([message])


def _add_common_flags(parser):
    parser.add_argument("--config", help="TOML config file")
    parser.add_argument("--dataset", help="dataset file for a single-smell run")
    parser.add_argument("--smell", "--smells", dest="smell",
                        help="comma list of smells, or 'all'")
    parser.add_argument("--models", help="comma list of model kinds, or 'all'")
    parser.add_argument("--search", choices=["none", "grid", "random", "bayes"])
    parser.add_argument("--trials", type=int, help="evaluation budget for random/bayes")
    parser.add_argument("--folds", type=int, help="cross-validation folds")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--test-fraction", type=float, dest="test_fraction")
    parser.add_argument("--smote-k", type=int, dest="smote_k")
    parser.add_argument("--mode", choices=["paper-faithful", "sound"])
    parser.add_argument("--features", help="auto | all | comma list of metric names")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--format", dest="formats",
                        help="comma list of report formats (markdown,csv,json)")
    parser.add_argument("--label-column", dest="label_column")
    parser.add_argument("--positive-label", dest="positive_label")


def _split_list(text):
    return tuple(part.strip() for part in str(text).split(",") if part.strip())


def _load_toml(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise ConfigError([f"config file not found: {path}"])
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError([f"invalid TOML in {path}: {exc}"]) from None


def build_config(args) -> ExperimentConfig:
    """Merge TOML config and flags into an ExperimentConfig; flags win."""
    doc = _load_toml(args.config) if args.config else {}
    known = {
        "datasets", "smells", "models", "search", "trials", "test_fraction",
        "smote_k", "folds", "seed", "mode", "features", "out", "formats",
        "label_column", "positive_label",
    }
    unknown = sorted(set(doc) - known)
    if unknown:
        raise ConfigError([f"unknown config keys {unknown}; valid keys: {sorted(known)}"])

    config = ExperimentConfig(
        datasets=dict(doc.get("datasets", {})),
        smells=tuple(doc.get("smells", ("all",))),
        models=tuple(doc.get("models", ("all",))),
        search=doc.get("search", "none"),
        n_trials=doc.get("trials", 25),
        test_fraction=doc.get("test_fraction", 0.30),
        smote_k=doc.get("smote_k", 5),
        folds=doc.get("folds", 5),
        seed=doc.get("seed", 0),
        mode=doc.get("mode", "paper-faithful"),
        features=doc.get("features", "auto"),
        out_dir=doc.get("out", "reports"),
        formats=tuple(doc.get("formats", ("markdown", "csv", "json"))),
        label_column=doc.get("label_column"),
        positive_label=doc.get("positive_label"),
    )

    overrides = {}
    if args.smell:
        overrides["smells"] = _split_list(args.smell)
    if args.models:
        overrides["models"] = _split_list(args.models)
    if args.search is not None:
        overrides["search"] = args.search
    if args.trials is not None:
        overrides["n_trials"] = args.trials
    if args.folds is not None:
        overrides["folds"] = args.folds
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.test_fraction is not None:
        overrides["test_fraction"] = args.test_fraction
    if args.smote_k is not None:
        overrides["smote_k"] = args.smote_k
    if args.mode is not None:
        overrides["mode"] = args.mode
    if args.features is not None:
        overrides["features"] = args.features
    if args.out is not None:
        overrides["out_dir"] = args.out
    if args.formats is not None:
        overrides["formats"] = _split_list(args.formats)
    if args.label_column is not None:
        overrides["label_column"] = args.label_column
    if args.positive_label is not None:
        overrides["positive_label"] = args.positive_label
    if args.dataset:
        smells = overrides.get("smells", config.smells)
        named = [s for s in smells if str(s).casefold() != "all"]
        if len(named) != 1:
            raise ConfigError(
                ["--dataset needs exactly one smell named via --smell"]
            )
        datasets = dict(config.datasets)
        datasets[named[0]] = args.dataset
        overrides["datasets"] = datasets

    return replace(config, **overrides)


def _cmd_run(args) -> int:
    config = build_config(args)
    result = run_experiment(config)
    banner_mode = result.config.mode
    print(f"mode: {banner_mode}")
    for smell, run in result.smells.items():
        c = run.counts
        print(
            f"{smell}: raw {c['raw'][0]}/{c['raw'][1]}"
            f" -> balanced {c['balanced'][0]}/{c['balanced'][1]}"
            f" -> split {c['train_rows']}/{c['test_rows']}"
        )
    for pair in result.pairs:
        r = pair.report
        print(
            f"{pair.smell} {pair.model} tuned={'yes' if pair.tuned else 'no'}"
            f" acc={100 * r.accuracy:.2f} prec={100 * r.precision:.2f}"
            f" rec={100 * r.recall:.2f} f1={100 * r.f1:.2f}"
        )
    print(f"wrote {len(result.written)} files under {result.config.out_dir}")
    return EXIT_OK


def _cmd_tune(args) -> int:
    config = build_config(args)
    result = run_tuning(config)
    print(f"wrote {len(result.written)} ledger files under {result.config.out_dir}")
    return EXIT_OK


def _cmd_eval(args) -> int:
    model = load_model(args.model_file)
    smell = args.smell or "GodClass"
    dataset = load_dataset(
        args.dataset, smell,
        label_column=args.label_column, positive_label=args.positive_label,
    )
    dataset = impute_missing(dataset)
    if model.feature_names and set(model.feature_names) <= set(dataset.schema.feature_names):
        indices = tuple(dataset.schema.feature_names.index(n) for n in model.feature_names)
        dataset = dataset.take_columns(indices)
    pred = predict(model, dataset.features)
    report = metrics(
        confusion(dataset.labels, pred),
        smell_kind=dataset.smell_kind, model_kind=model.kind,
    )
    print(render_report([report], "csv"), end="")
    return EXIT_OK


def _cmd_reference(args) -> int:
    try:
        row = reference_row(args.smell, args.model, args.tuned)
    except KeyError as exc:
        raise ConfigError([str(exc)]) from None
    tuned = "tuned" if args.tuned else "untuned"
    print(
        f"{args.smell} {args.model} ({tuned}): "
        f"Acc {row.accuracy:.2f}  Prec {row.precision:.2f}  "
        f"Rec {row.recall:.2f}  F1 {row.f1:.2f}"
    )
    return EXIT_OK


def _cmd_inspect(args) -> int:
    smell = args.smell or "GodClass"
    dataset = load_dataset(
        args.dataset, smell,
        label_column=args.label_column, positive_label=args.positive_label,
    )
    positives, negatives = class_counts(dataset)
    info = {
        "rows": dataset.n_rows,
        "features": dataset.n_features,
        "positives": positives,
        "negatives": negatives,
        "missing_cells": int(np.isnan(dataset.features).sum()),
    }
    selection, _ = select_features(impute_missing(dataset))
    info["correlation_threshold"] = selection.threshold
    info["correlations"] = {
        name: round(r, 6)
        for name, r in zip(dataset.schema.feature_names, selection.correlations)
    }
    info["selected_features"] = list(selection.selected_names)
    print(json.dumps(info, indent=2))
    return EXIT_OK


def make_parser() -> _Parser:
    parser = _Parser(prog="smelldetect",
                     description="Code smell detection experiment runner")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="full pipeline: preprocess, tune, fit, report")
    _add_common_flags(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_tune = sub.add_parser("tune", help="hyperparameter search only; writes ledgers")
    _add_common_flags(p_tune)
    p_tune.set_defaults(func=_cmd_tune)

    p_eval = sub.add_parser("eval", help="score a dataset with a saved model")
    p_eval.add_argument("--model-file", required=True, dest="model_file")
    p_eval.add_argument("--dataset", required=True)
    p_eval.add_argument("--smell")
    p_eval.add_argument("--label-column", dest="label_column")
    p_eval.add_argument("--positive-label", dest="positive_label")
    p_eval.set_defaults(func=_cmd_eval)

    p_ref = sub.add_parser("reference", help="print published metric values")
    p_ref.add_argument("--smell", required=True, choices=list(SMELL_KINDS))
    p_ref.add_argument("--model", required=True, choices=list(MODEL_KINDS))
    p_ref.add_argument("--tuned", action="store_true")
    p_ref.set_defaults(func=_cmd_reference)

    p_inspect = sub.add_parser("inspect", help="dataset stats: counts, correlations")
    p_inspect.add_argument("--dataset", required=True)
    p_inspect.add_argument("--smell")
    p_inspect.add_argument("--label-column", dest="label_column")
    p_inspect.add_argument("--positive-label", dest="positive_label")
    p_inspect.set_defaults(func=_cmd_inspect)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        for line in exc.errors:
            print(f"config error: {line}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # numeric/runtime problems
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
