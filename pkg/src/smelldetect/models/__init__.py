"""Uniform fit/predict surface over the eight from-scratch classifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from ..datasets import LabeledDataset
from .adaboost import AdaBoostClassifier, samme_stage_weight
from .forest import RandomForestClassifier
from .gradient_boosting import GradientBoostingClassifier, RegressionTree, log_loss
from .knn import KnnClassifier
from .naive_bayes import GaussianNaiveBayes
from .svm import SvmClassifier, resolve_gamma
from .tree import DecisionTreeClassifier, gini_impurity
from .xgb import XgbClassifier, xgb_leaf_weight

MODEL_KINDS = ("KNN", "NB", "XGB", "AdaBoost", "RF", "GB", "DT", "SVM")


def _positive_int(v):
    return isinstance(v, int) and not isinstance(v, bool) and v >= 1


def _positive_real(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and v > 0


def _optional_depth(v):
    return v is None or _positive_int(v)


# name -> (validator, default); validation is shared by ModelSpec and the grids
_PARAM_DOMAINS = {
    "KNN": {
        "n_neighbors": (_positive_int, 5),
        "p": (lambda v: v in (1, 2), 2),
        "weights": (lambda v: v in ("uniform", "distance"), "uniform"),
    },
    "NB": {
        "var_smoothing": (_positive_real, 1e-9),
    },
    "DT": {
        "max_depth": (_optional_depth, None),
        "max_features": (lambda v: v in (None, "sqrt", "log2"), None),
        "min_samples_split": (lambda v: isinstance(v, int) and v >= 2, 2),
        "min_samples_leaf": (_positive_int, 1),
    },
    "RF": {
        "n_estimators": (_positive_int, 100),
        "max_depth": (_optional_depth, None),
        "min_samples_split": (lambda v: isinstance(v, int) and v >= 2, 2),
        "min_samples_leaf": (_positive_int, 1),
        "bootstrap": (lambda v: isinstance(v, bool), True),
        "max_features": (lambda v: v in (None, "sqrt", "log2"), "sqrt"),
    },
    "AdaBoost": {
        "n_estimators": (_positive_int, 50),
        "learning_rate": (_positive_real, 1.0),
        "algorithm": (lambda v: v == "SAMME", "SAMME"),
    },
    "GB": {
        "n_estimators": (_positive_int, 100),
        "learning_rate": (_positive_real, 0.1),
        "max_depth": (_positive_int, 3),
    },
    "XGB": {
        "n_estimators": (_positive_int, 100),
        "learning_rate": (_positive_real, 0.1),
        "max_depth": (_positive_int, 3),
        "colsample_bytree": (
            lambda v: isinstance(v, (int, float)) and 0.0 < v <= 1.0,
            1.0,
        ),
    },
    "SVM": {
        "C": (_positive_real, 1.0),
        "gamma": (lambda v: v == "scale" or _positive_real(v), "scale"),
        "kernel": (lambda v: v in ("linear", "rbf"), "rbf"),
    },
}

_ESTIMATORS = {
    "KNN": KnnClassifier,
    "NB": GaussianNaiveBayes,
    "DT": DecisionTreeClassifier,
    "RF": RandomForestClassifier,
    "AdaBoost": AdaBoostClassifier,
    "GB": GradientBoostingClassifier,
    "XGB": XgbClassifier,
    "SVM": SvmClassifier,
}

_SEEDLESS = ("KNN", "NB")  # their fits consume no randomness


def validate_params(kind: str, params) -> dict:
    """Fill defaults and reject unknown names or out-of-domain values."""
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}; valid kinds are {MODEL_KINDS}")
    domain = _PARAM_DOMAINS[kind]
    params = dict(params or {})
    unknown = sorted(set(params) - set(domain))
    if unknown:
        raise ValueError(
            f"parameters {unknown} are not valid for {kind}; valid names: {sorted(domain)}"
        )
    full = {}
    for name, (check, default) in domain.items():
        value = params.get(name, default)
        if not check(value):
            raise ValueError(f"{kind} parameter {name}={value!r} is out of domain")
        full[name] = value
    return full


@dataclass(frozen=True)
class ModelSpec:
    """A classifier kind plus a complete, validated hyperparameter set."""

    kind: str
    params: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(
            self, "params", MappingProxyType(validate_params(self.kind, self.params))
        )


@dataclass(frozen=True)
class TrainedModel:
    """An immutable fitted predictor. ``classes`` is always (0, 1)."""

    kind: str
    params: MappingProxyType
    feature_count: int
    estimator: object
    seed: int
    feature_names: tuple = ()
    classes: tuple[int, int] = (0, 1)


def fit_model(spec: ModelSpec, train: LabeledDataset, seed: int = 0) -> TrainedModel:
    est_cls = _ESTIMATORS[spec.kind]
    kwargs = dict(spec.params)
    if spec.kind not in _SEEDLESS:
        kwargs["seed"] = seed
    estimator = est_cls(**kwargs).fit(train.features, train.labels)
    return TrainedModel(
        kind=spec.kind,
        params=spec.params,
        feature_count=train.n_features,
        estimator=estimator,
        seed=seed,
        feature_names=train.schema.feature_names,
    )


def predict(model: TrainedModel, rows) -> np.ndarray:
    """One 0/1 label per row; pure function of (model, rows)."""
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2:
        raise ValueError("rows must be a 2-D matrix")
    if rows.shape[0] == 0:
        return np.empty(0, dtype=int)
    if rows.shape[1] != model.feature_count:
        raise ValueError(
            f"rows have {rows.shape[1]} columns but the model expects {model.feature_count}"
        )
    return model.estimator.predict(rows)


def _fit(kind, train, params, seed):
    return fit_model(ModelSpec(kind, params or {}), train, seed=seed)


def fit_knn(train, params=None, seed=0):
    return _fit("KNN", train, params, seed)


def fit_gaussian_nb(train, params=None, seed=0):
    return _fit("NB", train, params, seed)


def fit_decision_tree(train, params=None, seed=0):
    return _fit("DT", train, params, seed)


def fit_random_forest(train, params=None, seed=0):
    return _fit("RF", train, params, seed)


def fit_adaboost(train, params=None, seed=0):
    return _fit("AdaBoost", train, params, seed)


def fit_gradient_boosting(train, params=None, seed=0):
    return _fit("GB", train, params, seed)


def fit_xgb(train, params=None, seed=0):
    return _fit("XGB", train, params, seed)


def fit_svm(train, params=None, seed=0):
    return _fit("SVM", train, params, seed)


__all__ = [
    "MODEL_KINDS",
    "ModelSpec",
    "TrainedModel",
    "validate_params",
    "fit_model",
    "predict",
    "fit_knn",
    "fit_gaussian_nb",
    "fit_decision_tree",
    "fit_random_forest",
    "fit_adaboost",
    "fit_gradient_boosting",
    "fit_xgb",
    "fit_svm",
    "KnnClassifier",
    "GaussianNaiveBayes",
    "DecisionTreeClassifier",
    "RandomForestClassifier",
    "AdaBoostClassifier",
    "GradientBoostingClassifier",
    "XgbClassifier",
    "SvmClassifier",
    "RegressionTree",
    "gini_impurity",
    "log_loss",
    "samme_stage_weight",
    "xgb_leaf_weight",
    "resolve_gamma",
]
