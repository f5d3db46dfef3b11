"""End-to-end experiment orchestration in paper-faithful or sound mode.

Paper-faithful order per dataset: load -> impute -> SMOTE -> feature
selection -> stratified split -> optional tuning on train -> final fit ->
evaluate on test.  Sound mode splits first and fits every statistic
(imputation means, SMOTE, selection) on the training fold only; the
provenance of each derived statistic is recorded so tests can assert that
test rows never leak into it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict, replace
from pathlib import Path

from .datasets import (
    DataError,
    LabeledDataset,
    SMELL_KINDS,
    apply_imputation,
    class_counts,
    fit_column_means,
    impute_missing,
    load_arff,
    load_csv,
    stratified_split,
)
from .evaluation import MetricsReport, confusion, metrics, render_report
from .models import MODEL_KINDS, ModelSpec, fit_model, predict
from .models.serialize import save_model
from .resampling import SmoteConfig, smote_oversample
from .selection import FeatureSelection, select_features
from .tuning import (
    CvConfig,
    TuningResult,
    bayesian_search,
    default_grid,
    grid_search,
    ledger_to_csv,
    ledger_to_json,
    random_search,
)

SEARCH_STRATEGIES = ("none", "grid", "random", "bayes")
MODES = ("paper-faithful", "sound")
REPORT_FORMATS = ("markdown", "csv", "json")
_FORMAT_FILENAMES = {"markdown": "report.md", "csv": "report.csv", "json": "report.json"}


class ConfigError(Exception):
    """Invalid experiment configuration; carries the collected error list."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class ExperimentConfig:
    datasets: dict = field(default_factory=dict)  # smell -> file path
    smells: tuple = ("all",)
    models: tuple = ("all",)
    search: str = "none"
    n_trials: int = 25
    test_fraction: float = 0.30
    smote_k: int = 5
    folds: int = 5
    seed: int = 0
    mode: str = "paper-faithful"
    features: str = "auto"  # auto | all | comma-separated names
    out_dir: str = "reports"
    formats: tuple = REPORT_FORMATS
    label_column: str | None = None
    positive_label: str | None = None


_CANON_SMELLS = {k.casefold(): k for k in SMELL_KINDS}
_CANON_MODELS = {k.casefold(): k for k in MODEL_KINDS}


def _canon(name: str, table: dict) -> str | None:
    return table.get(str(name).replace("-", "").replace("_", "").casefold())


def validate_config(config: ExperimentConfig):
    """Normalize and collect every error (never fail-fast).

    Returns (normalized config or None, list of error strings).
    """
    errors = []

    datasets = {}
    for smell, path in dict(config.datasets).items():
        canon = _canon(smell, _CANON_SMELLS)
        if canon is None:
            errors.append(f"unknown smell {smell!r} in datasets; valid: {list(SMELL_KINDS)}")
        else:
            datasets[canon] = str(path)

    smells = []
    requested = list(config.smells) if config.smells else []
    if not requested:
        errors.append("at least one smell is required")
    elif any(str(s).casefold() == "all" for s in requested):
        smells = [s for s in SMELL_KINDS if s in datasets]
        if not smells:
            errors.append("smells='all' but no dataset paths are configured")
    else:
        for s in requested:
            canon = _canon(s, _CANON_SMELLS)
            if canon is None:
                errors.append(f"unknown smell {s!r}; valid: {list(SMELL_KINDS)}")
            elif canon not in datasets:
                errors.append(f"no dataset path configured for smell {canon}")
            else:
                smells.append(canon)

    models = []
    requested = list(config.models) if config.models else []
    if not requested:
        errors.append("at least one model is required")
    elif any(str(m).casefold() == "all" for m in requested):
        models = list(MODEL_KINDS)
    else:
        for m in requested:
            canon = _canon(m, _CANON_MODELS)
            if canon is None:
                errors.append(f"unknown model {m!r}; valid kinds: {list(MODEL_KINDS)}")
            else:
                models.append(canon)

    if config.search not in SEARCH_STRATEGIES:
        errors.append(f"unknown search {config.search!r}; valid: {list(SEARCH_STRATEGIES)}")
    if config.mode not in MODES:
        errors.append(f"unknown mode {config.mode!r}; valid: {list(MODES)}")
    if not 0.0 < config.test_fraction < 1.0:
        errors.append(f"test_fraction must be in (0, 1), got {config.test_fraction}")
    if config.smote_k < 1:
        errors.append(f"smote_k must be >= 1, got {config.smote_k}")
    if config.folds < 2:
        errors.append(f"folds must be >= 2, got {config.folds}")
    if config.n_trials < 1:
        errors.append(f"trials must be >= 1, got {config.n_trials}")
    if config.search == "bayes" and config.n_trials < 6:
        errors.append("bayesian search needs trials >= 6 (5 initial points + 1)")

    formats = []
    for f in config.formats:
        if f not in REPORT_FORMATS:
            errors.append(f"unknown report format {f!r}; valid: {list(REPORT_FORMATS)}")
        else:
            formats.append(f)
    if not formats:
        errors.append("at least one report format is required")

    if errors:
        return None, errors
    normalized = replace(
        config,
        datasets=datasets,
        smells=tuple(smells),
        models=tuple(models),
        formats=tuple(formats),
    )
    return normalized, []


@dataclass
class SmellRun:
    """Prepared data and bookkeeping for one smell."""

    smell: str
    train: LabeledDataset
    test: LabeledDataset
    selection: FeatureSelection | None
    counts: dict
    provenance: dict


@dataclass
class PairRun:
    smell: str
    model: str
    seed: int
    tuned: bool
    params: dict
    tuning: TuningResult | None
    report: MetricsReport
    trained: object


@dataclass
class RunResult:
    config: ExperimentConfig
    smells: dict
    pairs: list
    reports: list
    written: list


def load_dataset(path, smell: str, label_column=None, positive_label=None) -> LabeledDataset:
    path = Path(path)
    if not path.exists():
        raise DataError(f"dataset file not found: {path}")
    if path.suffix.casefold() == ".csv":
        return load_csv(
            path,
            label_column=label_column or "is_smell",
            positive_label=positive_label or "true",
            smell_kind=smell,
        )
    return load_arff(
        path,
        label_attribute=label_column,
        positive_label=positive_label,
        smell_kind=smell,
    )


def _apply_feature_policy(dataset: LabeledDataset, policy: str):
    if policy == "all":
        return None, dataset
    if policy == "auto":
        return select_features(dataset)
    wanted = [name.strip() for name in policy.split(",") if name.strip()]
    names = dataset.schema.feature_names
    unknown = [w for w in wanted if w not in names]
    if unknown:
        raise DataError(f"unknown feature names {unknown}; dataset has {list(names)}")
    indices = tuple(names.index(w) for w in wanted)
    return None, dataset.take_columns(indices)


def prepare_smell(config: ExperimentConfig, smell: str) -> SmellRun:
    raw = load_dataset(
        config.datasets[smell], smell,
        label_column=config.label_column, positive_label=config.positive_label,
    )
    counts = {"raw": class_counts(raw)}
    smote = SmoteConfig(k_neighbors=config.smote_k, seed=config.seed)

    if config.mode == "paper-faithful":
        imputed = impute_missing(raw)
        balanced = smote_oversample(imputed, smote)
        counts["balanced"] = class_counts(balanced)
        selection, reduced = _apply_feature_policy(balanced, config.features)
        split = stratified_split(reduced, config.test_fraction, config.seed)
        train, test = split.train, split.test
        provenance = {"imputation": "all", "resampling": "all", "feature_selection": "all"}
    else:
        split = stratified_split(raw, config.test_fraction, config.seed)
        means = fit_column_means(split.train)
        train = apply_imputation(split.train, means)
        test = apply_imputation(split.test, means)
        train = smote_oversample(train, smote)
        counts["balanced"] = class_counts(train)
        selection, train = _apply_feature_policy(train, config.features)
        if selection is not None:
            test = test.take_columns(selection.selected)
        elif train.n_features != test.n_features:
            _, test = _apply_feature_policy(test, config.features)
        provenance = {
            "imputation": "train",
            "resampling": "train",
            "feature_selection": "train",
        }

    counts["train_rows"] = train.n_rows
    counts["test_rows"] = test.n_rows
    return SmellRun(
        smell=smell, train=train, test=test, selection=selection,
        counts=counts, provenance=provenance,
    )


def pair_seed(config: ExperimentConfig, smell: str, model: str) -> int:
    return config.seed + 1000 * SMELL_KINDS.index(smell) + MODEL_KINDS.index(model)


def tune_pair(config: ExperimentConfig, run: SmellRun, model: str) -> TuningResult:
    space = default_grid(model)
    cv = CvConfig(folds=config.folds, seed=config.seed)
    minority = min(class_counts(run.train))
    if cv.folds > minority:
        raise ValueError(
            f"folds={cv.folds} exceeds the minority-class count {minority} "
            f"of the {run.smell} training split"
        )
    seed = pair_seed(config, run.smell, model)
    if config.search == "grid":
        return grid_search(space, run.train, cv)
    if config.search == "random":
        return random_search(space, run.train, cv, n_trials=config.n_trials, seed=seed)
    if config.search == "bayes":
        return bayesian_search(space, run.train, cv, n_trials=config.n_trials, seed=seed)
    raise ValueError(f"no tuning strategy named {config.search!r}")


def run_pair(config: ExperimentConfig, run: SmellRun, model: str) -> PairRun:
    seed = pair_seed(config, run.smell, model)
    tuned = config.search != "none"
    tuning = tune_pair(config, run, model) if tuned else None
    params = dict(tuning.best_params) if tuning else {}
    spec = ModelSpec(model, params)
    trained = fit_model(spec, run.train, seed=seed)
    pred = predict(trained, run.test.features)
    report = metrics(
        confusion(run.test.labels, pred),
        smell_kind=run.smell, model_kind=model, tuned=tuned,
    )
    return PairRun(
        smell=run.smell, model=model, seed=seed, tuned=tuned,
        params=dict(spec.params), tuning=tuning, report=report, trained=trained,
    )


def _manifest(config: ExperimentConfig, smell_runs: dict, pairs: list) -> dict:
    cfg = asdict(config)
    cfg["datasets"] = {k: str(v) for k, v in config.datasets.items()}
    return {
        "format": "smelldetect-run-v1",
        "mode": config.mode,
        "config": cfg,
        "pair_seeds": {f"{p.smell}/{p.model}": p.seed for p in pairs},
        "pipeline": {
            smell: {
                "counts": {
                    "raw": list(run.counts["raw"]),
                    "balanced": list(run.counts["balanced"]),
                    "train_rows": run.counts["train_rows"],
                    "test_rows": run.counts["test_rows"],
                },
                "statistics_provenance": run.provenance,
                "selected_features": (
                    list(run.selection.selected_names) if run.selection else None
                ),
                "selection_threshold": (
                    run.selection.threshold if run.selection else None
                ),
            }
            for smell, run in smell_runs.items()
        },
    }


def run_experiment(config: ExperimentConfig) -> RunResult:
    """Execute the configured pipeline and write reports, models, and ledgers.

    The entire run is a pure function of the config (every seed is derived
    from config.seed), so repeating it writes byte-identical files.
    """
    normalized, errors = validate_config(config)
    if errors:
        raise ConfigError(errors)
    config = normalized

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    smell_runs = {}
    pairs = []
    for smell in config.smells:
        run = prepare_smell(config, smell)
        smell_runs[smell] = run
        for model in config.models:
            pairs.append(run_pair(config, run, model))

    reports = [p.report for p in pairs]
    for fmt in config.formats:
        path = out_dir / _FORMAT_FILENAMES[fmt]
        path.write_text(render_report(reports, fmt), encoding="utf-8")
        written.append(path)

    models_dir = out_dir / "models"
    models_dir.mkdir(exist_ok=True)
    for p in pairs:
        path = models_dir / f"{p.smell}__{p.model}.json"
        save_model(p.trained, path)
        written.append(path)

    tuned_pairs = [p for p in pairs if p.tuned]
    if tuned_pairs:
        ledger_dir = out_dir / "ledgers"
        ledger_dir.mkdir(exist_ok=True)
        for p in tuned_pairs:
            csv_path = ledger_dir / f"{p.smell}__{p.model}.trials.csv"
            csv_path.write_text(ledger_to_csv(p.tuning), encoding="utf-8")
            json_path = ledger_dir / f"{p.smell}__{p.model}.trials.json"
            json_path.write_text(ledger_to_json(p.tuning), encoding="utf-8")
            written.extend([csv_path, json_path])

    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(
        json.dumps(_manifest(config, smell_runs, pairs), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    written.append(manifest_path)

    return RunResult(
        config=config, smells=smell_runs, pairs=pairs,
        reports=reports, written=written,
    )


def run_tuning(config: ExperimentConfig) -> RunResult:
    """Tuning only: write trial ledgers without final fits or reports."""
    normalized, errors = validate_config(config)
    if errors:
        raise ConfigError(errors)
    config = normalized
    if config.search == "none":
        raise ConfigError(["the tune command needs --search grid|random|bayes"])

    out_dir = Path(config.out_dir)
    ledger_dir = out_dir / "ledgers"
    ledger_dir.mkdir(parents=True, exist_ok=True)
    written = []
    smell_runs = {}
    pairs = []
    for smell in config.smells:
        run = prepare_smell(config, smell)
        smell_runs[smell] = run
        for model in config.models:
            tuning = tune_pair(config, run, model)
            csv_path = ledger_dir / f"{smell}__{model}.trials.csv"
            csv_path.write_text(ledger_to_csv(tuning), encoding="utf-8")
            json_path = ledger_dir / f"{smell}__{model}.trials.json"
            json_path.write_text(ledger_to_json(tuning), encoding="utf-8")
            written.extend([csv_path, json_path])
    return RunResult(config=config, smells=smell_runs, pairs=pairs, reports=[], written=written)
