"""Bagged CART forest with per-bootstrap balanced class weights."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .preprocess import class_weights, sample_weights
from .tree import Classifier, TreeModel, _check_xy, grow_tree, sqrt_features


@dataclass
class ForestModel(Classifier):
    classes_: np.ndarray
    trees: list[TreeModel]
    tree_seeds: list[int]
    max_features: int | None
    bootstrap: bool = True

    def predict_proba(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        total = np.zeros((len(X), len(self.classes_)))
        # fixed summation order keeps predictions bit-identical
        for tree in self.trees:
            total += tree.predict_proba(X)
        return total / len(self.trees)

    def to_json(self) -> dict:
        return {
            "classes": self.classes_.tolist(),
            "tree_seeds": self.tree_seeds,
            "max_features": self.max_features,
            "bootstrap": self.bootstrap,
            "trees": [t.to_json() for t in self.trees],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ForestModel":
        return cls(np.array(data["classes"]), [TreeModel.from_json(t) for t in data["trees"]],
                   list(data["tree_seeds"]), data["max_features"], data["bootstrap"])


def train_random_forest(X, y, n_trees: int = 200, seed: int = 0, max_features="sqrt",
                        bootstrap: bool = True, max_depth: int = 32) -> ForestModel:
    """Each tree sees a seeded bootstrap sample whose class weights are rebalanced on that sample."""
    X, y = _check_xy(X, y)
    classes = np.unique(y)
    d = X.shape[1]
    if max_features == "sqrt":
        max_features = sqrt_features(d)
    seeds = [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(n_trees)]
    trees = []
    for s in seeds:
        rng = np.random.default_rng(s)
        rows = rng.integers(0, len(y), len(y)) if bootstrap else np.arange(len(y))
        cw = class_weights(y[rows], classes)
        w = np.zeros(len(y))
        w[rows] = sample_weights(y[rows], cw)  # duplicates carry the same weight
        trees.append(grow_tree(X, y, w, classes=classes, max_depth=max_depth,
                               max_features=max_features, rng=rng, rows=np.sort(rows)))
    return ForestModel(classes, trees, seeds, max_features, bootstrap)
