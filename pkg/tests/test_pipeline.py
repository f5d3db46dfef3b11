import json
from pathlib import Path

import pytest

from smelldetect.pipeline import (
    ConfigError,
    ExperimentConfig,
    pair_seed,
    prepare_smell,
    run_experiment,
    run_tuning,
    validate_config,
)
from smelldetect.synthetic import synthetic_dataset, write_arff


@pytest.fixture
def small_dataset_file(tmp_path):
    ds = synthetic_dataset("GodClass", seed=3, counts=(20, 40), missing_rate=0.02)
    path = tmp_path / "god-class.arff"
    write_arff(ds, path)
    return path


def _config(path, **kw):
    defaults = dict(
        datasets={"GodClass": str(path)},
        smells=("GodClass",),
        models=("NB", "DT"),
        search="none",
        folds=3,
        seed=7,
    )
    defaults.update(kw)
    return ExperimentConfig(**defaults)


# ---------------------------------------------------------------------------
# validate_config
# ---------------------------------------------------------------------------

def test_validate_fills_all_and_normalizes(small_dataset_file):
    config = _config(small_dataset_file, smells=("all",), models=("all",))
    normalized, errors = validate_config(config)
    assert errors == []
    assert normalized.smells == ("GodClass",)
    assert len(normalized.models) == 8


def test_validate_collects_every_error(small_dataset_file):
    config = _config(
        small_dataset_file,
        smells=(),
        models=("MLP",),
        test_fraction=1.5,
        folds=1,
        search="simulated-annealing",
    )
    normalized, errors = validate_config(config)
    assert normalized is None
    assert len(errors) >= 4  # all collected, not fail-fast
    assert any("MLP" in e and "KNN" in e for e in errors)
    assert any("test_fraction" in e for e in errors)
    assert any("smell" in e for e in errors)
    assert any("search" in e for e in errors)


def test_validate_accepts_loose_names(small_dataset_file):
    config = _config(small_dataset_file, smells=("godclass",), models=("adaboost", "rf"))
    normalized, errors = validate_config(config)
    assert errors == []
    assert normalized.smells == ("GodClass",)
    assert normalized.models == ("AdaBoost", "RF")


def test_run_raises_config_error_as_list(small_dataset_file):
    config = _config(small_dataset_file, models=("MLP",))
    with pytest.raises(ConfigError) as err:
        run_experiment(config)
    assert isinstance(err.value.errors, list)


# ---------------------------------------------------------------------------
# prepare_smell: both modes
# ---------------------------------------------------------------------------

def test_paper_mode_pipeline_order_and_counts(small_dataset_file):
    run = prepare_smell(_config(small_dataset_file, out_dir="unused"), "GodClass")
    assert run.counts["raw"] == (20, 40)
    assert run.counts["balanced"] == (40, 40)
    total = run.counts["train_rows"] + run.counts["test_rows"]
    assert total == 80  # split happens after balancing
    assert run.provenance == {
        "imputation": "all", "resampling": "all", "feature_selection": "all"
    }
    assert not run.train.has_missing() and not run.test.has_missing()


def test_sound_mode_quarantines_test_rows(small_dataset_file):
    config = _config(small_dataset_file, mode="sound")
    run = prepare_smell(config, "GodClass")
    # split happens on the raw 60 rows; only the train side is balanced
    assert run.counts["test_rows"] == 18  # round_half_up per class: 6 + 12
    assert run.counts["train_rows"] >= 42
    assert all(origin == "train" for origin in run.provenance.values())
    assert not run.train.has_missing() and not run.test.has_missing()
    # train is balanced, test keeps the raw imbalance
    from smelldetect.datasets import class_counts

    train_pos, train_neg = class_counts(run.train)
    assert train_pos == train_neg
    test_pos, test_neg = class_counts(run.test)
    assert test_pos != test_neg


def test_feature_policy_all_and_explicit(small_dataset_file):
    config = _config(small_dataset_file, features="all")
    run = prepare_smell(config, "GodClass")
    assert run.selection is None
    assert run.train.n_features == 12

    config = _config(small_dataset_file, features="LOC type,WMC type")
    run = prepare_smell(config, "GodClass")
    assert run.train.schema.feature_names == ("LOC type", "WMC type")
    assert run.test.schema.feature_names == ("LOC type", "WMC type")


# ---------------------------------------------------------------------------
# run_experiment: outputs and determinism
# ---------------------------------------------------------------------------

def _file_inventory(out_dir: Path):
    return sorted(p.relative_to(out_dir) for p in out_dir.rglob("*") if p.is_file())


def test_run_writes_exactly_the_promised_files(small_dataset_file, tmp_path):
    out = tmp_path / "out"
    config = _config(small_dataset_file, out_dir=str(out))
    result = run_experiment(config)
    inventory = {str(p) for p in _file_inventory(out)}
    expected = {
        "report.md", "report.csv", "report.json", "manifest.json",
        "models/GodClass__NB.json", "models/GodClass__DT.json",
    }
    assert inventory == expected  # no ledgers without tuning; nothing extra
    assert len(result.reports) == 2


def test_tuned_run_adds_ledgers_with_grid_cardinality(small_dataset_file, tmp_path):
    out = tmp_path / "out"
    config = _config(small_dataset_file, out_dir=str(out), search="grid", models=("NB",))
    result = run_experiment(config)
    ledger_csv = out / "ledgers" / "GodClass__NB.trials.csv"
    assert ledger_csv.exists()
    assert (out / "ledgers" / "GodClass__NB.trials.json").exists()
    lines = ledger_csv.read_text().strip().split("\n")
    from smelldetect.tuning import default_grid

    assert len(lines) - 1 == default_grid("NB").grid_size()
    assert result.pairs[0].tuned
    assert result.pairs[0].report.tuned


def test_identical_config_and_seed_give_byte_identical_outputs(small_dataset_file, tmp_path):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    result_a = run_experiment(_config(small_dataset_file, out_dir=str(out_a), search="random",
                                      n_trials=3, models=("NB", "KNN")))
    result_b = run_experiment(_config(small_dataset_file, out_dir=str(out_b), search="random",
                                      n_trials=3, models=("NB", "KNN")))
    files_a = _file_inventory(out_a)
    files_b = _file_inventory(out_b)
    assert files_a == files_b
    for rel in files_a:
        a_bytes = (out_a / rel).read_bytes()
        b_bytes = (out_b / rel).read_bytes()
        if rel.name == "manifest.json":
            # differs only in the out_dir recorded inside the config block
            a_bytes = a_bytes.replace(str(out_a).encode(), b"OUT")
            b_bytes = b_bytes.replace(str(out_b).encode(), b"OUT")
        assert a_bytes == b_bytes, rel


def test_manifest_records_seeds_counts_and_provenance(small_dataset_file, tmp_path):
    out = tmp_path / "out"
    config = _config(small_dataset_file, out_dir=str(out))
    run_experiment(config)
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["mode"] == "paper-faithful"
    assert manifest["config"]["seed"] == 7
    assert manifest["pair_seeds"]["GodClass/NB"] == pair_seed(config, "GodClass", "NB")
    pipeline = manifest["pipeline"]["GodClass"]
    assert pipeline["counts"]["raw"] == [20, 40]
    assert pipeline["counts"]["balanced"] == [40, 40]
    assert pipeline["statistics_provenance"]["imputation"] == "all"
    assert pipeline["selected_features"]


def test_sound_mode_manifest_provenance_tags_all_train(small_dataset_file, tmp_path):
    out = tmp_path / "out"
    run_experiment(_config(small_dataset_file, out_dir=str(out), mode="sound"))
    manifest = json.loads((out / "manifest.json").read_text())
    tags = manifest["pipeline"]["GodClass"]["statistics_provenance"]
    assert set(tags.values()) == {"train"}


def test_missing_dataset_file_raises_data_error(tmp_path):
    from smelldetect.datasets import DataError

    config = _config(tmp_path / "nope.arff")
    with pytest.raises(DataError, match="nope.arff"):
        run_experiment(config)


def test_run_tuning_writes_ledgers_only(small_dataset_file, tmp_path):
    out = tmp_path / "out"
    config = _config(small_dataset_file, out_dir=str(out), search="grid", models=("NB",))
    result = run_tuning(config)
    inventory = {str(p) for p in _file_inventory(out)}
    assert inventory == {
        "ledgers/GodClass__NB.trials.csv",
        "ledgers/GodClass__NB.trials.json",
    }
    assert result.reports == []


def test_run_tuning_requires_search(small_dataset_file, tmp_path):
    config = _config(small_dataset_file, out_dir=str(tmp_path / "x"), search="none")
    with pytest.raises(ConfigError):
        run_tuning(config)


def test_folds_beyond_minority_count_rejected(small_dataset_file, tmp_path):
    config = _config(small_dataset_file, out_dir=str(tmp_path / "x"),
                     search="grid", models=("NB",), folds=60)
    with pytest.raises(ValueError, match="minority"):
        run_experiment(config)


def test_all_smells_grid_run_yields_one_ledger_per_smell(tmp_path):
    # one tuned model across every smell: 6 reports, 6 ledgers sized like the grid
    from smelldetect.datasets import SMELL_KINDS
    from smelldetect.tuning import default_grid

    datasets = {}
    for i, smell in enumerate(SMELL_KINDS):
        path = tmp_path / f"{smell}.arff"
        write_arff(synthetic_dataset(smell, seed=i, counts=(15, 30)), path)
        datasets[smell] = str(path)
    out = tmp_path / "out"
    config = ExperimentConfig(
        datasets=datasets, smells=("all",), models=("NB",), search="grid",
        folds=3, seed=1, out_dir=str(out), formats=("csv",),
    )
    result = run_experiment(config)
    assert len(result.reports) == 6
    assert all(p.tuned for p in result.pairs)
    grid_size = default_grid("NB").grid_size()
    for smell in SMELL_KINDS:
        ledger = out / "ledgers" / f"{smell}__NB.trials.csv"
        assert len(ledger.read_text().strip().split("\n")) - 1 == grid_size
    report_lines = (out / "report.csv").read_text().strip().split("\n")
    assert len(report_lines) - 1 == 6
