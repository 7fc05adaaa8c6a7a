"""Multinomial logistic regression by full-batch gradient descent."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boosting import softmax
from .preprocess import class_weights, sample_weights
from .tree import Classifier, _check_xy


class TrainingDivergedError(ArithmeticError):
    pass


@dataclass
class LinearModel(Classifier):
    classes_: np.ndarray
    coef: np.ndarray       # (n_features, n_classes)
    intercept: np.ndarray  # (n_classes,)
    n_iter: int = 0

    def predict_proba(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        return softmax(X @ self.coef + self.intercept)

    def to_json(self) -> dict:
        return {"classes": self.classes_.tolist(), "coef": self.coef.tolist(),
                "intercept": self.intercept.tolist(), "n_iter": self.n_iter}

    @classmethod
    def from_json(cls, data: dict) -> "LinearModel":
        return cls(np.array(data["classes"]), np.array(data["coef"], dtype=np.float64),
                   np.array(data["intercept"], dtype=np.float64), data["n_iter"])


def weighted_loss_and_grad(coef, intercept, X, onehot, w):
    """Class-weighted mean cross-entropy and its gradient w.r.t. (coef, intercept)."""
    p = softmax(X @ coef + intercept)
    total = w.sum()
    loss = -np.sum(w * np.log(np.clip((p * onehot).sum(axis=1), 1e-300, None))) / total
    resid = (p - onehot) * w[:, None] / total
    return loss, X.T @ resid, resid.sum(axis=0)


def train_logistic_regression(X, y, weights="balanced", max_iter: int = 500, lr: float = 0.1,
                              tol: float = 1e-6) -> LinearModel:
    """No regularization; stops after ``max_iter`` steps or when the gradient norm drops below ``tol``."""
    X, y = _check_xy(X, y)
    classes = np.unique(y)
    if isinstance(weights, str):
        if weights != "balanced":
            raise ValueError(f"unknown class weighting {weights!r}")
        weights = class_weights(y)
    w = sample_weights(y, weights)
    onehot = (y[:, None] == classes[None, :]).astype(np.float64)
    coef = np.zeros((X.shape[1], len(classes)))
    intercept = np.zeros(len(classes))
    it = 0
    for it in range(1, max_iter + 1):
        loss, g_coef, g_int = weighted_loss_and_grad(coef, intercept, X, onehot, w)
        if not np.isfinite(loss):
            raise TrainingDivergedError(f"non-finite loss {loss} at iteration {it} (lr={lr})")
        if np.sqrt(np.sum(g_coef ** 2) + np.sum(g_int ** 2)) < tol:
            break
        coef -= lr * g_coef
        intercept -= lr * g_int
    return LinearModel(classes, coef, intercept, it)
