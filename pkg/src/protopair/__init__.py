"""protopair: binary classification with two sparse prototype rows.

Training reduces a labeled table to a pair of actual training samples
(one per class) and the small feature subset on which they generalize
best; prediction labels a row by whichever prototype it is nearer to.
"""

from .data import (
    Dataset,
    FoldPlan,
    Scaler,
    load_csv,
    minmax_apply,
    minmax_fit,
    save_csv,
    stratified_folds,
    train_test_split,
)
from .errors import (
    ClassSizeError,
    DataError,
    LabelError,
    ParseError,
    SchemaError,
    SearchSpaceError,
    SingletonClassError,
    TrainingError,
)
from .metrics import ConfusionMatrix, accuracy, confusion, f_measure, sparsity_report
from .model import Prototype, PrototypeModel
from .model_io import load_model, model_bytes, save_model
from .neighbors import LshParams, NeighborIndex, build_index, exact_nearest
from .oracle import OracleResult, oracle_search
from .prediction import Prediction, distance, explain, predict_batch, predict_one
from .bench import BenchReport, FoldOutcome, bench_run
from .training import (
    Candidate,
    FeatureComparison,
    TrainConfig,
    TrainStats,
    Triplet,
    compare_features,
    evaluate_candidate,
    form_triplet,
    train,
    train_level,
)

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "Candidate",
    "ClassSizeError",
    "ConfusionMatrix",
    "DataError",
    "Dataset",
    "FeatureComparison",
    "FoldOutcome",
    "FoldPlan",
    "LabelError",
    "LshParams",
    "NeighborIndex",
    "OracleResult",
    "ParseError",
    "Prediction",
    "Prototype",
    "PrototypeModel",
    "Scaler",
    "SchemaError",
    "SearchSpaceError",
    "SingletonClassError",
    "TrainConfig",
    "TrainStats",
    "TrainingError",
    "Triplet",
    "accuracy",
    "bench_run",
    "build_index",
    "compare_features",
    "confusion",
    "distance",
    "evaluate_candidate",
    "exact_nearest",
    "explain",
    "f_measure",
    "form_triplet",
    "load_csv",
    "load_model",
    "minmax_apply",
    "minmax_fit",
    "model_bytes",
    "oracle_search",
    "predict_batch",
    "predict_one",
    "save_csv",
    "save_model",
    "sparsity_report",
    "stratified_folds",
    "train",
    "train_level",
    "train_test_split",
]
