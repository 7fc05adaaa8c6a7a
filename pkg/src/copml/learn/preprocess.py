"""Median imputation, z-scoring and balanced class weights."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

log = logging.getLogger(__name__)


@dataclass
class Preprocessor:
    median: np.ndarray
    mean: np.ndarray
    std: np.ndarray
    fitted: bool = True

    def transform(self, X) -> np.ndarray:
        X = np.array(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != len(self.median):
            raise ValueError(f"expected {len(self.median)} columns, got shape {X.shape}")
        X = np.where(np.isnan(X), self.median, X)
        scale = np.where(self.std > 0, self.std, 1.0)
        return np.where(self.std > 0, (X - self.mean) / scale, 0.0)

    def to_json(self) -> dict:
        return {"median": self.median.tolist(), "mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "Preprocessor":
        return cls(*(np.array(data[k], dtype=np.float64) for k in ("median", "mean", "std")))


def fit_preprocessor(X) -> Preprocessor:
    """Fit on training rows only; NaN marks a missing value."""
    X = np.array(X, dtype=np.float64)
    if X.ndim != 2 or len(X) == 0:
        raise ValueError("need a non-empty 2-D training matrix")
    median = np.zeros(X.shape[1])
    for j in range(X.shape[1]):
        col = X[:, j][~np.isnan(X[:, j])]
        if len(col) == 0:
            log.warning("column %d is entirely missing in training data; imputing 0", j)
        else:
            median[j] = np.median(col)
    filled = np.where(np.isnan(X), median, X)
    mean = filled.mean(axis=0)
    std = filled.std(axis=0)
    # constant columns can pick up rounding noise in std
    std[np.all(filled == filled[0], axis=0)] = 0.0
    return Preprocessor(median, mean, std)


def class_weights(y, classes=None) -> dict:
    """Balanced weights ``N / (K * N_c)`` for the classes present in ``y``."""
    y = np.asarray(y)
    if classes is None:
        classes = np.unique(y)
    counts = {c: int(np.sum(y == c)) for c in classes}
    present = [c for c in classes if counts[c] > 0]
    return {c: len(y) / (len(present) * counts[c]) for c in present}


def sample_weights(y, weights: dict | None) -> np.ndarray:
    y = np.asarray(y)
    if weights is None:
        return np.ones(len(y))
    return np.array([weights[c] for c in y], dtype=np.float64)
