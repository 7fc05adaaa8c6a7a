"""Weighted-Gini CART classification trees."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .preprocess import class_weights, sample_weights

log = logging.getLogger(__name__)

MAX_DEPTH = 32


class Classifier:
    """Shared prediction surface: ``classes_`` plus ``predict_proba``."""

    classes_: np.ndarray

    def predict_proba(self, X) -> np.ndarray:
        raise NotImplementedError

    def predict(self, X) -> np.ndarray:
        return self.classes_[np.argmax(self.predict_proba(X), axis=1)]


def _check_xy(X, y):
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if X.ndim != 2 or len(X) == 0:
        raise ValueError("need a non-empty 2-D feature matrix")
    if len(X) != len(y):
        raise ValueError(f"{len(X)} rows but {len(y)} labels")
    return X, y


@dataclass
class TreeModel(Classifier):
    """Flat binary tree. Internal nodes send ``x[feature] <= threshold`` left.

    Leaves have ``feature == -1`` and ``value`` holds the weighted class
    distribution of the training rows that reached them.
    """

    classes_: np.ndarray
    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    @property
    def node_count(self) -> int:
        return len(self.feature)

    @property
    def depth(self) -> int:
        depth = np.zeros(self.node_count, dtype=np.int64)
        for i in range(self.node_count):
            if self.feature[i] >= 0:
                depth[self.left[i]] = depth[self.right[i]] = depth[i] + 1
        return int(depth.max())

    def apply(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        node = np.zeros(len(X), dtype=np.int64)
        active = self.feature[node] >= 0
        while active.any():
            idx = np.flatnonzero(active)
            nd = node[idx]
            go_left = X[idx, self.feature[nd]] <= self.threshold[nd]
            node[idx] = np.where(go_left, self.left[nd], self.right[nd])
            active = self.feature[node] >= 0
        return node

    def predict_proba(self, X) -> np.ndarray:
        return self.value[self.apply(X)]

    def used_features(self) -> set[int]:
        return {int(f) for f in self.feature if f >= 0}

    def to_json(self) -> dict:
        return {
            "classes": self.classes_.tolist(),
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "TreeModel":
        return cls(
            np.array(data["classes"]),
            np.array(data["feature"], dtype=np.int64),
            np.array(data["threshold"], dtype=np.float64),
            np.array(data["left"], dtype=np.int64),
            np.array(data["right"], dtype=np.int64),
            np.array(data["value"], dtype=np.float64).reshape(len(data["feature"]), -1),
        )


def _best_split(x: np.ndarray, onehot_w: np.ndarray, parent_counts: np.ndarray):
    """Best midpoint split of one feature: (weighted impurity decrease, threshold) or None.

    ``onehot_w`` is the per-row one-hot label matrix scaled by sample weight.
    The decrease is ``W*gini(parent) - W_L*gini(L) - W_R*gini(R)``.
    """
    order = np.argsort(x, kind="stable")
    xs = x[order]
    valid = xs[1:] > xs[:-1]
    if not valid.any():
        return None
    left = np.cumsum(onehot_w[order], axis=0)[:-1]
    right = parent_counts - left
    wl = left.sum(axis=1)
    wr = right.sum(axis=1)
    total = parent_counts.sum()
    parent_term = total - (parent_counts ** 2).sum() / total
    with np.errstate(divide="ignore", invalid="ignore"):
        left_term = wl - np.where(wl > 0, (left ** 2).sum(axis=1) / wl, 0.0)
        right_term = wr - np.where(wr > 0, (right ** 2).sum(axis=1) / wr, 0.0)
    gain = np.where(valid, parent_term - left_term - right_term, -np.inf)
    pos = int(np.argmax(gain))
    return float(gain[pos]), (xs[pos] + xs[pos + 1]) / 2.0


@dataclass
class _Builder:
    X: np.ndarray
    onehot_w: np.ndarray
    max_depth: int = MAX_DEPTH
    min_samples_split: int = 2
    max_features: int | None = None
    rng: np.random.Generator | None = None
    nodes: list = field(default_factory=list)

    def build(self, idx: np.ndarray) -> None:
        # explicit stack keeps node numbering in preorder
        stack = [(idx, 0, None)]
        while stack:
            rows, depth, parent_slot = stack.pop()
            counts = self.onehot_w[rows].sum(axis=0)
            node_id = len(self.nodes)
            self.nodes.append([-1, 0.0, -1, -1, counts])
            if parent_slot is not None:
                self.nodes[parent_slot[0]][parent_slot[1]] = node_id
            split = None
            pure = np.count_nonzero(counts > 0) <= 1
            if not pure and len(rows) >= self.min_samples_split and depth < self.max_depth:
                split = self._choose(rows, counts)
            if split is None:
                continue
            f, thr = split
            go_left = self.X[rows, f] <= thr
            self.nodes[node_id][0] = f
            self.nodes[node_id][1] = thr
            stack.append((rows[~go_left], depth + 1, (node_id, 3)))
            stack.append((rows[go_left], depth + 1, (node_id, 2)))

    def _choose(self, rows: np.ndarray, counts: np.ndarray):
        d = self.X.shape[1]
        if self.max_features is None or self.max_features >= d:
            candidates = range(d)
            limit = d
        else:
            candidates = self.rng.permutation(d)
            limit = self.max_features
        best = None
        examined = 0
        sub_w = self.onehot_w[rows]
        for f in candidates:
            if examined >= limit:
                break
            res = _best_split(self.X[rows, f], sub_w, counts)
            if res is None:
                continue  # constant features do not count toward the sample
            examined += 1
            gain, thr = res
            key = (gain, -f, -thr)
            if best is None or key > best[0]:
                best = (key, int(f), float(thr))
        if best is None:
            return None
        return best[1], best[2]

    def finish(self, classes) -> TreeModel:
        feature = np.array([n[0] for n in self.nodes], dtype=np.int64)
        threshold = np.array([n[1] for n in self.nodes], dtype=np.float64)
        left = np.array([n[2] for n in self.nodes], dtype=np.int64)
        right = np.array([n[3] for n in self.nodes], dtype=np.int64)
        counts = np.array([n[4] for n in self.nodes], dtype=np.float64)
        value = counts / counts.sum(axis=1, keepdims=True)
        return TreeModel(np.asarray(classes), feature, threshold, left, right, value)


def grow_tree(X, y, weights=None, classes=None, max_depth: int = MAX_DEPTH,
              min_samples_split: int = 2, max_features: int | None = None,
              rng: np.random.Generator | None = None, rows=None) -> TreeModel:
    X, y = _check_xy(X, y)
    classes = np.unique(y) if classes is None else np.asarray(classes)
    onehot = (y[:, None] == classes[None, :]).astype(np.float64)
    w = np.ones(len(y)) if weights is None else np.asarray(weights, dtype=np.float64)
    builder = _Builder(X, onehot * w[:, None], max_depth, min_samples_split, max_features, rng)
    builder.build(np.arange(len(y)) if rows is None else np.asarray(rows))
    return builder.finish(classes)


def train_decision_tree(X, y, weights="balanced", max_depth: int = MAX_DEPTH,
                        min_samples_split: int = 2) -> TreeModel:
    """CART on weighted Gini impurity.

    ``weights`` is a class -> weight mapping, ``"balanced"`` for N/(K*N_c),
    or None for unit weights. Thresholds are midpoints between consecutive
    distinct values; ties go to the lowest feature, then the lowest threshold.
    """
    X, y = _check_xy(X, y)
    if len(np.unique(y)) < 2:
        log.warning("training data holds a single class; the tree is one leaf")
    if isinstance(weights, str):
        if weights != "balanced":
            raise ValueError(f"unknown class weighting {weights!r}")
        weights = class_weights(y)
    return grow_tree(X, y, sample_weights(y, weights), max_depth=max_depth,
                     min_samples_split=min_samples_split)


def sqrt_features(d: int) -> int:
    return max(1, math.ceil(math.sqrt(d)))
