"""Confusion-matrix metrics."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class EvalReport:
    labels: list[int]
    confusion: list[list[int]]  # rows = true class, columns = predicted class
    precision: list[float]
    recall: list[float]
    f1: list[float]
    support: list[int]
    accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float

    def to_json(self) -> dict:
        return dict(vars(self))

    @classmethod
    def from_json(cls, data: dict) -> "EvalReport":
        return cls(**{k: data[k] for k in cls.__dataclass_fields__})


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def report_from_confusion(confusion, labels=None) -> EvalReport:
    c = np.asarray(confusion, dtype=np.int64)
    k = c.shape[0]
    if c.shape != (k, k):
        raise ValueError("confusion matrix must be square")
    total = int(c.sum())
    if total == 0:
        raise ValueError("empty evaluation set")
    labels = list(range(1, k + 1)) if labels is None else [int(x) for x in labels]
    tp = np.diag(c)
    precision = [_ratio(tp[i], c[:, i].sum()) for i in range(k)]
    recall = [_ratio(tp[i], c[i, :].sum()) for i in range(k)]
    f1 = [_ratio(2 * p * r, p + r) for p, r in zip(precision, recall)]
    return EvalReport(
        labels=labels,
        confusion=c.tolist(),
        precision=[float(x) for x in precision],
        recall=[float(x) for x in recall],
        f1=[float(x) for x in f1],
        support=[int(x) for x in c.sum(axis=1)],
        accuracy=float(tp.sum() / total),
        macro_precision=float(sum(precision) / k),
        macro_recall=float(sum(recall) / k),
        macro_f1=float(sum(f1) / k),
    )


def confusion_matrix(y_true, y_pred, labels) -> np.ndarray:
    index = {c: i for i, c in enumerate(labels)}
    out = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        out[index[t], index[p]] += 1
    return out


def accuracy(y_true, y_pred) -> float:
    y_true = np.asarray(y_true)
    return float(np.mean(y_true == np.asarray(y_pred)))


def evaluate(model, X, y, labels=None) -> EvalReport:
    """Argmax predictions of ``model`` on ``X`` scored against ``y``."""
    y = np.asarray(y)
    if len(y) == 0:
        raise ValueError("empty test set")
    if labels is None:
        labels = sorted(set(model.classes_.tolist()) | set(y.tolist()))
    pred = model.predict(X)
    return report_from_confusion(confusion_matrix(y, pred, labels), labels)
