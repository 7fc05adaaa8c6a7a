"""Permutation feature importance."""
from __future__ import annotations

import numpy as np

from .metrics import accuracy


def permutation_importance(model, X, y, repeats: int = 10, seed: int = 0,
                           feature_names=None) -> list[tuple[str, float]]:
    """Mean accuracy drop when each column is shuffled, sorted descending.

    Columns are visited in index order and each draws ``repeats`` permutations
    from one seeded generator, so the result depends only on ``seed``.
    Ties keep column order.
    """
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    names = list(feature_names) if feature_names is not None else [f"f{j}" for j in range(X.shape[1])]
    rng = np.random.default_rng(seed)
    base = accuracy(y, model.predict(X))
    drops = []
    for j in range(X.shape[1]):
        total = 0.0
        for _ in range(repeats):
            Xp = X.copy()
            Xp[:, j] = X[rng.permutation(len(X)), j]
            total += base - accuracy(y, model.predict(Xp))
        drops.append(total / repeats)
    order = sorted(range(len(drops)), key=lambda j: (-drops[j], j))
    return [(names[j], float(drops[j])) for j in order]
