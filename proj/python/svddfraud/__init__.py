"""SVDD fraud detection with density-based training-set reduction."""

from ._svddfraud import (
    ConfigError,
    ConvergenceError,
    DataError,
    StageError,
    SvddModel,
    SvmModel,
    estimate_eps,
    f_measure,
    generate_fraud_like,
    load_model,
    normalize,
    reduce,
    roc_auc,
    run_ga,
    run_pipeline,
    train_svdd,
    train_svm,
)

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DataError",
    "StageError",
    "SvddModel",
    "SvmModel",
    "estimate_eps",
    "f_measure",
    "generate_fraud_like",
    "load_model",
    "normalize",
    "reduce",
    "roc_auc",
    "run_ga",
    "run_pipeline",
    "train_svdd",
    "train_svm",
]
