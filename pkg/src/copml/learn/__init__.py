"""Preprocessing, classifiers, metrics and interpretability for cop-number prediction."""
from .boosting import BoostedModel, train_hist_gradient_boosting
from .forest import ForestModel, train_random_forest
from .importance import permutation_importance
from .logistic import LinearModel, train_logistic_regression
from .metrics import EvalReport, confusion_matrix, evaluate, report_from_confusion
from .pipeline import MODEL_TYPES, ModelFileError, Pipeline, fit_pipeline
from .preprocess import Preprocessor, class_weights, fit_preprocessor
from .tree import TreeModel, train_decision_tree

__all__ = [
    "BoostedModel", "EvalReport", "ForestModel", "LinearModel", "MODEL_TYPES", "ModelFileError",
    "Pipeline", "Preprocessor", "TreeModel", "class_weights", "confusion_matrix", "evaluate",
    "fit_pipeline", "fit_preprocessor", "permutation_importance", "report_from_confusion",
    "train_decision_tree", "train_hist_gradient_boosting", "train_logistic_regression",
    "train_random_forest",
]
