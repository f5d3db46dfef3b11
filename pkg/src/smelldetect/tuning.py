"""Hyperparameter search: grid, random, and Gaussian-process Bayesian.

All strategies score candidates with stratified k-fold cross-validation on
the training split (objective: accuracy) and record every evaluation in an
ordered trial ledger.  Fold assignment depends only on the data values,
labels, and seed: rows are put into a canonical sorted order before folds
are dealt, so row order never changes a result.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .datasets import LabeledDataset
from .models import MODEL_KINDS, ModelSpec, fit_model, predict


@dataclass(frozen=True)
class Choice:
    """Explicit value list; enumerable, one-hot encoded for the surrogate."""

    values: tuple

    def __post_init__(self):
        values = tuple(self.values)
        if not values:
            raise ValueError("a Choice domain cannot be empty")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class Range:
    """Bounded numeric range, sampled uniformly on a linear or log scale."""

    low: float
    high: float
    scale: str = "linear"

    def __post_init__(self):
        if self.scale not in ("linear", "log"):
            raise ValueError("scale must be 'linear' or 'log'")
        if not self.low < self.high:
            raise ValueError(f"empty range [{self.low}, {self.high}]")
        if self.scale == "log" and self.low <= 0:
            raise ValueError("log-scale ranges must be strictly positive")


@dataclass(frozen=True)
class SearchSpace:
    kind: str
    domains: dict  # parameter name -> Choice | Range, in declared order

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if not self.domains:
            raise ValueError("a search space needs at least one domain")
        object.__setattr__(self, "domains", dict(self.domains))

    def is_enumerable(self) -> bool:
        return all(isinstance(d, Choice) for d in self.domains.values())

    def grid_size(self) -> int:
        if not self.is_enumerable():
            raise ValueError("space has non-enumerable domains")
        return math.prod(len(d.values) for d in self.domains.values())

    def enumerate_grid(self):
        """Cartesian product in declared parameter order."""
        if not self.is_enumerable():
            raise ValueError("space has non-enumerable domains")
        names = list(self.domains)
        for combo in itertools.product(*(self.domains[n].values for n in names)):
            yield dict(zip(names, combo))

    def sample(self, rng) -> dict:
        params = {}
        for name, domain in self.domains.items():
            if isinstance(domain, Choice):
                params[name] = domain.values[rng.integers(len(domain.values))]
            elif domain.scale == "linear":
                params[name] = float(rng.uniform(domain.low, domain.high))
            else:
                params[name] = float(
                    math.exp(rng.uniform(math.log(domain.low), math.log(domain.high)))
                )
        return params

    def contains(self, params: dict) -> bool:
        if set(params) != set(self.domains):
            return False
        for name, domain in self.domains.items():
            v = params[name]
            if isinstance(domain, Choice):
                if v not in domain.values:
                    return False
            elif not (domain.low <= v <= domain.high):
                return False
        return True


@dataclass(frozen=True)
class CvConfig:
    folds: int = 5
    seed: int = 0
    objective: str = "accuracy"

    def __post_init__(self):
        if self.folds < 2:
            raise ValueError("folds must be >= 2")
        if self.objective != "accuracy":
            raise ValueError("only the accuracy objective is supported")


@dataclass(frozen=True)
class Trial:
    params: dict
    mean_score: float
    fold_scores: tuple


@dataclass(frozen=True)
class TuningResult:
    best_params: dict
    best_score: float
    trials: tuple

    def __post_init__(self):
        object.__setattr__(self, "trials", tuple(self.trials))


# ---------------------------------------------------------------------------
# Default grids (every published best configuration is a point of its grid)
# ---------------------------------------------------------------------------

_DEFAULT_GRIDS = {
    "XGB": {
        "colsample_bytree": Choice((0.3, 0.5, 0.7, 1.0)),
        "learning_rate": Choice((0.01, 0.1, 0.3)),
        "max_depth": Choice((3, 5, 7)),
        "n_estimators": Choice((50, 100, 200)),
    },
    "AdaBoost": {
        "algorithm": Choice(("SAMME",)),
        "learning_rate": Choice((0.01, 0.1, 1.0)),
        "n_estimators": Choice((50, 100, 200)),
    },
    "RF": {
        "bootstrap": Choice((True, False)),
        "max_depth": Choice((None, 2, 5, 10)),
        "min_samples_leaf": Choice((1, 2)),
        "min_samples_split": Choice((2, 5, 10)),
        "n_estimators": Choice((50, 100, 200)),
    },
    "GB": {
        "learning_rate": Choice((0.01, 0.1, 0.5, 1.0)),
        "max_depth": Choice((3, 5)),
        "n_estimators": Choice((50, 100, 200)),
    },
    "DT": {
        "max_depth": Choice((None, 5)),
        "max_features": Choice((None, "sqrt", "log2")),
        "min_samples_leaf": Choice((1, 2)),
        "min_samples_split": Choice((2, 5)),
    },
    "KNN": {
        "n_neighbors": Choice((3, 5, 7, 9)),
        "p": Choice((1, 2)),
        "weights": Choice(("uniform", "distance")),
    },
    "NB": {
        "var_smoothing": Choice((1e-9, 1e-7, 1e-5)),
    },
    "SVM": {
        "C": Choice((0.1, 1, 10)),
        "gamma": Choice(("scale",)),
        "kernel": Choice(("linear", "rbf")),
    },
}


def default_grid(kind: str) -> SearchSpace:
    if kind not in _DEFAULT_GRIDS:
        raise ValueError(f"unknown model kind {kind!r}; valid kinds are {MODEL_KINDS}")
    return SearchSpace(kind=kind, domains=dict(_DEFAULT_GRIDS[kind]))


# ---------------------------------------------------------------------------
# Cross-validation
# ---------------------------------------------------------------------------

def _canonical_order(X, y) -> np.ndarray:
    # lexsort: last key is primary, so order is by column 0, then 1, ..., then label
    return np.lexsort((y,) + tuple(X[:, j] for j in range(X.shape[1] - 1, -1, -1)))


def stratified_fold_indices(X, y, folds: int, seed: int) -> list[np.ndarray]:
    """Test-row index arrays for each fold, invariant to input row order.

    Rows are first sorted canonically (lexicographically by feature values,
    then label); each class's rows are then shuffled with the seeded
    generator and dealt round-robin across folds.  Each returned array lists
    its rows in the canonical order, so the matrices a fold gathers are
    identical however the input rows were permuted.
    """
    n = y.shape[0]
    if folds > n:
        raise ValueError(f"cannot build {folds} folds from {n} rows")
    canonical = _canonical_order(X, y)
    rng = np.random.default_rng(seed)
    assignments = [[] for _ in range(folds)]
    cursor = 0  # continue dealing across classes so fold sizes stay balanced
    for label in (0, 1):
        class_rows = canonical[y[canonical] == label]
        class_rows = rng.permutation(class_rows)
        for pos, row in enumerate(class_rows):
            assignments[(cursor + pos) % folds].append(int(row))
        cursor = (cursor + class_rows.size) % folds
    if any(len(a) == 0 for a in assignments):
        raise ValueError(
            f"fold construction impossible: {folds} folds leave an empty fold"
        )
    position = np.empty(n, dtype=int)
    position[canonical] = np.arange(n)
    return [
        np.asarray(sorted(a, key=position.__getitem__), dtype=int)
        for a in assignments
    ]


def cross_validate(kind, params, train: LabeledDataset, cv: CvConfig):
    """(mean accuracy, per-fold accuracies) of seeded stratified k-fold CV."""
    X, y = train.features, train.labels
    fold_tests = stratified_fold_indices(X, y, cv.folds, cv.seed)
    spec = ModelSpec(kind, params)
    canonical = _canonical_order(X, y)
    in_test = np.zeros(train.n_rows, dtype=bool)
    scores = []
    for test_rows in fold_tests:
        in_test[:] = False
        in_test[test_rows] = True
        train_rows = canonical[~in_test[canonical]]  # complement, canonical order
        fold_train = train.take_rows(train_rows)
        model = fit_model(spec, fold_train, seed=cv.seed)
        pred = predict(model, X[test_rows])
        scores.append(float(np.mean(pred == y[test_rows])))
    return float(np.mean(scores)), tuple(scores)


def _cv_objective(space, train, cv):
    def objective(params):
        return cross_validate(space.kind, params, train, cv)

    return objective


def _as_trial(params, outcome) -> Trial:
    if isinstance(outcome, tuple):
        mean, folds = outcome
    else:
        mean, folds = float(outcome), (float(outcome),)
    return Trial(params=dict(params), mean_score=float(mean), fold_scores=tuple(folds))


def _result(trials) -> TuningResult:
    best = max(trials, key=lambda t: t.mean_score)  # max() keeps the earliest tie
    return TuningResult(best_params=dict(best.params), best_score=best.mean_score,
                        trials=tuple(trials))


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------

def grid_search(space: SearchSpace, train=None, cv=None, *, objective=None) -> TuningResult:
    """Evaluate the full Cartesian product; earliest trial wins score ties."""
    if not space.is_enumerable():
        raise ValueError("grid_search needs every domain to be an explicit value list")
    if objective is None:
        objective = _cv_objective(space, train, cv)
    trials = [_as_trial(params, objective(params)) for params in space.enumerate_grid()]
    return _result(trials)


def random_search(space: SearchSpace, train=None, cv=None, n_trials: int = 25,
                  seed: int = 0, *, objective=None) -> TuningResult:
    """n_trials independent uniform draws (with replacement), seeded."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    if objective is None:
        objective = _cv_objective(space, train, cv)
    rng = np.random.default_rng(seed)
    trials = []
    for _ in range(n_trials):
        params = space.sample(rng)
        trials.append(_as_trial(params, objective(params)))
    return _result(trials)


_N_INITIAL = 5
_N_CANDIDATES = 512
_JITTER = 1e-6


def _encode(space: SearchSpace, params: dict) -> np.ndarray:
    parts = []
    for name, domain in space.domains.items():
        v = params[name]
        if isinstance(domain, Choice):
            onehot = [0.0] * len(domain.values)
            onehot[domain.values.index(v)] = 1.0
            parts.extend(onehot)
        elif domain.scale == "linear":
            parts.append((v - domain.low) / (domain.high - domain.low))
        else:
            span = math.log(domain.high) - math.log(domain.low)
            parts.append((math.log(v) - math.log(domain.low)) / span)
    return np.asarray(parts)


def _norm_cdf(z):
    return 0.5 * (1.0 + np.vectorize(math.erf)(z / math.sqrt(2.0)))


def _norm_pdf(z):
    return np.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)


def _expected_improvement(mu, sigma, best):
    improvement = mu - best
    with np.errstate(divide="ignore", invalid="ignore"):
        z = improvement / sigma
        ei = improvement * _norm_cdf(z) + sigma * _norm_pdf(z)
    return np.where(sigma > 0.0, ei, 0.0)


def bayesian_search(space: SearchSpace, train=None, cv=None, n_trials: int = 25,
                    seed: int = 0, *, objective=None) -> TuningResult:
    """GP-guided sequential search after a 5-point seeded random design.

    The surrogate is a squared-exponential kernel over encoded parameters
    (min-max normalized numerics, log-space for log domains, one-hot
    categoricals) with 1e-6 diagonal jitter and length scale equal to the
    median pairwise encoded distance; expected improvement is maximized over
    512 seeded random candidates per step.
    """
    if n_trials <= _N_INITIAL:
        raise ValueError(
            f"n_trials must exceed the initial design of {_N_INITIAL}, got {n_trials}"
        )
    if objective is None:
        objective = _cv_objective(space, train, cv)

    if space.is_enumerable() and space.grid_size() == 1:
        params = next(space.enumerate_grid())
        return _result([_as_trial(params, objective(params))])

    rng = np.random.default_rng(seed)
    trials = []
    for _ in range(_N_INITIAL):
        params = space.sample(rng)
        trials.append(_as_trial(params, objective(params)))

    while len(trials) < n_trials:
        X = np.vstack([_encode(space, t.params) for t in trials])
        y = np.asarray([t.mean_score for t in trials])
        diffs = X[:, None, :] - X[None, :, :]
        sq = (diffs * diffs).sum(axis=2)
        pair = sq[np.triu_indices(len(trials), k=1)]
        length = float(np.sqrt(np.median(pair))) if pair.size else 1.0
        if length <= 0.0:
            length = 1.0
        K = np.exp(-sq / (2.0 * length * length)) + _JITTER * np.eye(len(trials))

        candidates = [space.sample(rng) for _ in range(_N_CANDIDATES)]
        C = np.vstack([_encode(space, p) for p in candidates])
        cross = (
            (C * C).sum(axis=1)[:, None]
            + (X * X).sum(axis=1)[None, :]
            - 2.0 * (C @ X.T)
        )
        k_star = np.exp(-np.maximum(cross, 0.0) / (2.0 * length * length))

        L = np.linalg.cholesky(K)
        alpha = np.linalg.solve(L.T, np.linalg.solve(L, y))
        mu = k_star @ alpha
        v = np.linalg.solve(L, k_star.T)
        var = np.maximum(1.0 - (v * v).sum(axis=0), 0.0)
        sigma = np.sqrt(var)

        ei = _expected_improvement(mu, sigma, float(y.max()))
        chosen = candidates[int(np.argmax(ei))]
        trials.append(_as_trial(chosen, objective(chosen)))

    return _result(trials)


# ---------------------------------------------------------------------------
# Trial ledgers
# ---------------------------------------------------------------------------

def ledger_to_csv(result: TuningResult) -> str:
    names = sorted({name for t in result.trials for name in t.params})
    n_folds = max(len(t.fold_scores) for t in result.trials)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["trial"] + names + [f"fold_{i}" for i in range(n_folds)] + ["mean_score"]
    )
    for idx, t in enumerate(result.trials):
        fold_cells = [repr(s) for s in t.fold_scores]
        fold_cells += [""] * (n_folds - len(fold_cells))
        writer.writerow(
            [idx]
            + [repr(t.params[n]) if n in t.params else "" for n in names]
            + fold_cells
            + [repr(t.mean_score)]
        )
    return buf.getvalue()


def ledger_to_json(result: TuningResult) -> str:
    doc = {
        "best_params": result.best_params,
        "best_score": result.best_score,
        "trials": [
            {
                "params": t.params,
                "mean_score": t.mean_score,
                "fold_scores": list(t.fold_scores),
            }
            for t in result.trials
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"
