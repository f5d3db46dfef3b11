import math

import numpy as np
import pytest

from smelldetect.models import fit_adaboost, fit_random_forest, predict
from smelldetect.models.adaboost import AdaBoostClassifier, samme_stage_weight
from smelldetect.models.forest import RandomForestClassifier
from smelldetect.models.tree import DecisionTreeClassifier

from conftest import random_dataset


# ---------------------------------------------------------------------------
# Random forest
# ---------------------------------------------------------------------------

def test_degenerate_forest_equals_single_tree(rng):
    X = rng.normal(size=(40, 5))
    y = rng.integers(0, 2, size=40)
    queries = rng.normal(size=(30, 5))
    forest = RandomForestClassifier(
        n_estimators=1, bootstrap=False, max_features=None, max_depth=4, seed=3
    ).fit(X, y)
    tree = DecisionTreeClassifier(max_depth=4, seed=3).fit(X, y)
    assert np.array_equal(forest.predict(queries), tree.predict(queries))


def test_majority_vote_two_to_one():
    class _Fixed:
        def __init__(self, label):
            self.label = label

        def predict(self, X):
            return np.full(len(X), self.label, dtype=int)

    forest = RandomForestClassifier(n_estimators=3)
    forest.trees_ = [_Fixed(1), _Fixed(1), _Fixed(0)]
    assert forest.predict(np.zeros((4, 2))).tolist() == [1, 1, 1, 1]


def test_vote_tie_breaks_to_zero():
    class _Fixed:
        def __init__(self, label):
            self.label = label

        def predict(self, X):
            return np.full(len(X), self.label, dtype=int)

    forest = RandomForestClassifier(n_estimators=2)
    forest.trees_ = [_Fixed(1), _Fixed(0)]
    assert forest.predict(np.zeros((2, 2))).tolist() == [0, 0]


def test_same_seed_identical_predictions(rng):
    train = random_dataset(rng, n_rows=50, n_features=4)
    held_out = rng.normal(size=(40, 4)) + 1.0
    a = fit_random_forest(train, {"n_estimators": 12, "max_depth": 3}, seed=8)
    b = fit_random_forest(train, {"n_estimators": 12, "max_depth": 3}, seed=8)
    assert np.array_equal(predict(a, held_out), predict(b, held_out))


def test_bootstrap_changes_training_sets(rng):
    X = rng.normal(size=(30, 3))
    y = rng.integers(0, 2, size=30)
    with_boot = RandomForestClassifier(n_estimators=5, bootstrap=True, seed=0).fit(X, y)
    without = RandomForestClassifier(n_estimators=5, bootstrap=False, seed=0).fit(X, y)
    assert len(with_boot.trees_) == len(without.trees_) == 5


# ---------------------------------------------------------------------------
# AdaBoost / SAMME
# ---------------------------------------------------------------------------

def test_stage_weight_quarter_error_is_ln3():
    assert samme_stage_weight(0.25, 1.0) == pytest.approx(math.log(3.0), abs=1e-12)


def test_stage_weight_scales_with_learning_rate():
    assert samme_stage_weight(0.25, 0.5) == pytest.approx(0.5 * math.log(3.0))


def test_perfectly_separable_training_error_zero_after_round_one():
    X = np.array([[0.0], [1.0], [2.0], [3.0]])
    y = np.array([0, 0, 1, 1])
    model = AdaBoostClassifier(n_estimators=50).fit(X, y)
    assert len(model.stumps_) == 1  # early stop on a perfect stump
    assert model.stage_errors_[0] == 0.0
    assert np.array_equal(model.predict(X), y)


def test_weight_vectors_stay_normalized(rng):
    train = random_dataset(rng, n_rows=40, n_features=2, shift=1.0)
    model = fit_adaboost(train, {"n_estimators": 50, "learning_rate": 1.0})
    sums = model.estimator.weight_sums_
    assert len(sums) >= 1
    for s in sums:
        assert s == pytest.approx(1.0, abs=1e-9)


def test_stage_weights_match_formula(rng):
    train = random_dataset(rng, n_rows=60, n_features=3, shift=1.0)
    model = fit_adaboost(train, {"n_estimators": 20, "learning_rate": 0.7}).estimator
    for error, alpha in zip(model.stage_errors_, model.stage_weights_):
        assert alpha == pytest.approx(samme_stage_weight(error, 0.7))
        assert error < 0.5


def test_boosting_improves_over_single_stump(rng):
    # XOR-ish data a single stump cannot fit
    X = rng.uniform(-1, 1, size=(200, 2))
    y = ((X[:, 0] > 0) ^ (X[:, 1] > 0)).astype(int)
    stump_acc = np.mean(DecisionTreeClassifier(max_depth=1).fit(X, y).predict(X) == y)
    boosted = AdaBoostClassifier(n_estimators=100).fit(X, y)
    boosted_acc = np.mean(boosted.predict(X) == y)
    assert boosted_acc > stump_acc


def test_all_rounds_kept_on_hard_data(rng):
    X = rng.normal(size=(80, 2))
    y = rng.integers(0, 2, size=80)
    model = AdaBoostClassifier(n_estimators=10).fit(X, y)
    assert len(model.stumps_) == len(model.stage_weights_)
    assert len(model.stumps_) <= 10


def test_single_class_rejected():
    with pytest.raises(ValueError):
        AdaBoostClassifier().fit(np.zeros((4, 1)), np.array([1, 1, 1, 1]))
