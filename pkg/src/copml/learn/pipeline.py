"""Preprocessor + classifier bundles and their JSON model files."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .boosting import BoostedModel, train_hist_gradient_boosting
from .forest import ForestModel, train_random_forest
from .logistic import LinearModel, train_logistic_regression
from .preprocess import Preprocessor, fit_preprocessor
from .tree import TreeModel, train_decision_tree

MODEL_FORMAT = "copml-model"
MODEL_VERSION = 1

MODEL_TYPES = {
    "dtree": TreeModel,
    "rforest": ForestModel,
    "histgb": BoostedModel,
    "logreg": LinearModel,
}


class ModelFileError(Exception):
    pass


@dataclass
class Pipeline:
    kind: str
    preprocessor: Preprocessor
    model: object
    feature_names: list[str]
    params: dict = field(default_factory=dict)

    @property
    def classes_(self) -> np.ndarray:
        return self.model.classes_

    def predict_proba(self, X) -> np.ndarray:
        return self.model.predict_proba(self.preprocessor.transform(X))

    def predict(self, X) -> np.ndarray:
        return self.model.predict(self.preprocessor.transform(X))

    def to_json(self, metadata: dict | None = None) -> dict:
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "kind": self.kind,
            "params": self.params,
            "feature_names": self.feature_names,
            "preprocessor": self.preprocessor.to_json(),
            "model": self.model.to_json(),
            "metadata": metadata or {},
        }

    def save(self, path, metadata: dict | None = None) -> None:
        Path(path).write_text(json.dumps(self.to_json(metadata), separators=(",", ":")) + "\n")

    @classmethod
    def from_json(cls, data: dict) -> "Pipeline":
        if data.get("format") != MODEL_FORMAT:
            raise ModelFileError("not a copml model file")
        if data.get("version") != MODEL_VERSION:
            raise ModelFileError(f"unsupported model file version {data.get('version')}")
        kind = data["kind"]
        if kind not in MODEL_TYPES:
            raise ModelFileError(f"unknown model kind {kind!r}")
        return cls(kind, Preprocessor.from_json(data["preprocessor"]),
                   MODEL_TYPES[kind].from_json(data["model"]), list(data["feature_names"]),
                   dict(data.get("params", {})))

    @classmethod
    def load(cls, path) -> "Pipeline":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ModelFileError(f"cannot read model file {path}: {exc}") from exc
        return cls.from_json(data)


def fit_pipeline(kind: str, X, y, feature_names, seed: int = 0, **params) -> Pipeline:
    """Fit the preprocessor on ``X`` and then the named classifier on the transformed rows."""
    if kind not in MODEL_TYPES:
        raise ValueError(f"unknown model {kind!r}; choose from {sorted(MODEL_TYPES)}")
    pre = fit_preprocessor(X)
    Z = pre.transform(X)
    if kind == "dtree":
        model = train_decision_tree(Z, y, **params)
    elif kind == "rforest":
        model = train_random_forest(Z, y, seed=seed, **params)
    elif kind == "histgb":
        model = train_hist_gradient_boosting(Z, y, seed=seed, **params)
    else:
        model = train_logistic_regression(Z, y, **params)
    return Pipeline(kind, pre, model, list(feature_names), {"seed": seed, **params})
