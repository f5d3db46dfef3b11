"""Code smell detection from software metrics.

Pipeline pieces: dataset ingestion and stratified splitting, SMOTE class
balancing, Pearson-correlation feature selection, eight from-scratch
classifiers behind a uniform fit/predict contract, grid / random / Bayesian
hyperparameter search over stratified cross-validation, and evaluation
against embedded published reference tables.
"""

from .datasets import (
    ArffParseError,
    DataError,
    DatasetSchema,
    LabeledDataset,
    LabelError,
    SMELL_KINDS,
    SplitPair,
    class_counts,
    impute_missing,
    load_arff,
    load_csv,
    stratified_split,
    write_csv,
)
from .evaluation import (
    ComparisonRow,
    ConfusionMatrix,
    MetricsReport,
    compare_to_reference,
    confusion,
    metrics,
    render_report,
)
from .models import (
    MODEL_KINDS,
    ModelSpec,
    TrainedModel,
    fit_adaboost,
    fit_decision_tree,
    fit_gaussian_nb,
    fit_gradient_boosting,
    fit_knn,
    fit_model,
    fit_random_forest,
    fit_svm,
    fit_xgb,
    predict,
)
from .models.serialize import load_model, save_model
from .pipeline import (
    ConfigError,
    ExperimentConfig,
    run_experiment,
    run_tuning,
    validate_config,
)
from .reference import BEST_PARAMS, RAW_CLASS_COUNTS, reference_row
from .resampling import SmoteConfig, smote_oversample
from .selection import FeatureSelection, pearson_correlation, select_features
from .tuning import (
    Choice,
    CvConfig,
    Range,
    SearchSpace,
    TuningResult,
    bayesian_search,
    cross_validate,
    default_grid,
    grid_search,
    random_search,
)

__version__ = "0.1.0"
