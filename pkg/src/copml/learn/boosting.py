"""Histogram gradient boosting for multiclass log-loss.

Features are quantile-binned once on the training rows; every boosting round
fits one regression tree per class on the softmax gradients, growing leaves
best-first over per-node gradient/hessian histograms.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .tree import Classifier, _check_xy

MIN_HESSIAN = 1e-3


def bin_edges(x: np.ndarray, max_bins: int) -> np.ndarray:
    """Split points for one feature; a value goes to bin ``searchsorted(edges, v, 'left')``.

    With at most ``max_bins`` distinct values the edges are midpoints between
    them; otherwise interior quantiles, with duplicate edges merged.
    """
    distinct = np.unique(x)
    if len(distinct) <= max_bins:
        return (distinct[:-1] + distinct[1:]) / 2.0
    qs = np.percentile(x, np.linspace(0, 100, max_bins + 1)[1:-1], method="midpoint")
    return np.unique(qs)


def apply_bins(X: np.ndarray, edges: list[np.ndarray]) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if np.isnan(X).any():
        raise ValueError("histogram boosting expects imputed (NaN-free) features")
    out = np.empty(X.shape, dtype=np.int32)
    for j, e in enumerate(edges):
        out[:, j] = np.searchsorted(e, X[:, j], side="left")
    return out


@dataclass
class RegressionTree:
    """Leaves have ``feature == -1``; internal nodes send ``bin <= bin_threshold`` left."""

    feature: np.ndarray
    bin_threshold: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    def predict_binned(self, B: np.ndarray) -> np.ndarray:
        node = np.zeros(len(B), dtype=np.int64)
        active = self.feature[node] >= 0
        while active.any():
            idx = np.flatnonzero(active)
            nd = node[idx]
            go_left = B[idx, self.feature[nd]] <= self.bin_threshold[nd]
            node[idx] = np.where(go_left, self.left[nd], self.right[nd])
            active = self.feature[node] >= 0
        return self.value[node]

    def to_json(self) -> dict:
        return {k: getattr(self, k).tolist() for k in
                ("feature", "bin_threshold", "threshold", "left", "right", "value")}

    @classmethod
    def from_json(cls, data: dict) -> "RegressionTree":
        ints = ("feature", "bin_threshold", "left", "right")
        return cls(**{k: np.array(v, dtype=np.int64 if k in ints else np.float64) for k, v in data.items()})


@dataclass
class BoostedModel(Classifier):
    classes_: np.ndarray
    edges: list[np.ndarray]
    baseline: np.ndarray
    trees: list[list[RegressionTree]]  # trees[iteration][class]
    learning_rate: float
    max_bins: int
    seed: int

    @property
    def n_iter(self) -> int:
        return len(self.trees)

    def raw_scores(self, X, n_iter: int | None = None) -> np.ndarray:
        B = apply_bins(X, self.edges)
        scores = np.tile(self.baseline, (len(B), 1))
        for round_trees in self.trees[:n_iter]:
            for k, tree in enumerate(round_trees):
                scores[:, k] += tree.predict_binned(B)
        return scores

    def predict_proba(self, X) -> np.ndarray:
        return softmax(self.raw_scores(X))

    def to_json(self) -> dict:
        return {
            "classes": self.classes_.tolist(),
            "edges": [e.tolist() for e in self.edges],
            "baseline": self.baseline.tolist(),
            "learning_rate": self.learning_rate,
            "max_bins": self.max_bins,
            "seed": self.seed,
            "trees": [[t.to_json() for t in r] for r in self.trees],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoostedModel":
        return cls(
            np.array(data["classes"]),
            [np.array(e, dtype=np.float64) for e in data["edges"]],
            np.array(data["baseline"], dtype=np.float64),
            [[RegressionTree.from_json(t) for t in r] for r in data["trees"]],
            data["learning_rate"], data["max_bins"], data["seed"],
        )


def softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def log_loss(proba: np.ndarray, onehot: np.ndarray, weights=None) -> float:
    per_row = -np.log(np.clip((proba * onehot).sum(axis=1), 1e-300, None))
    if weights is None:
        return float(per_row.mean())
    return float(np.sum(per_row * weights) / np.sum(weights))


class _HistTreeGrower:
    def __init__(self, B, n_bins, max_depth, max_leaf_nodes, min_samples_leaf, l2):
        self.B = B
        self.n_bins = n_bins
        self.d = B.shape[1]
        self.codes = B + (np.arange(self.d, dtype=np.int32) * n_bins)[None, :]
        self.max_depth = max_depth
        self.max_leaf_nodes = max_leaf_nodes
        self.min_samples_leaf = min_samples_leaf
        self.l2 = l2

    def histograms(self, rows, grad, hess):
        codes = self.codes[rows].ravel()
        size = self.d * self.n_bins
        g = np.bincount(codes, weights=np.repeat(grad[rows], self.d), minlength=size)
        h = np.bincount(codes, weights=np.repeat(hess[rows], self.d), minlength=size)
        c = np.bincount(codes, minlength=size)
        shape = (self.d, self.n_bins)
        return g.reshape(shape), h.reshape(shape), c.reshape(shape)

    def find_split(self, hist):
        g, h, c = hist
        G, H, C = g[0].sum(), h[0].sum(), c[0].sum()
        gl = np.cumsum(g, axis=1)[:, :-1]
        hl = np.cumsum(h, axis=1)[:, :-1]
        cl = np.cumsum(c, axis=1)[:, :-1]
        gr, hr, cr = G - gl, H - hl, C - cl
        ok = ((cl >= self.min_samples_leaf) & (cr >= self.min_samples_leaf)
              & (hl >= MIN_HESSIAN) & (hr >= MIN_HESSIAN))
        if not ok.any():
            return None
        lam = self.l2
        with np.errstate(divide="ignore", invalid="ignore"):
            gain = gl ** 2 / (hl + lam) + gr ** 2 / (hr + lam) - G ** 2 / (H + lam)
        gain = np.where(ok, gain, -np.inf)
        flat = int(np.argmax(gain))  # row-major: lowest feature, then lowest bin
        if not gain.flat[flat] > 1e-12:
            return None
        f, b = divmod(flat, gain.shape[1])
        return float(gain.flat[flat]), f, b

    def grow(self, grad, hess, edges, learning_rate) -> RegressionTree:
        n = len(grad)
        nodes = []  # [feature, bin, threshold, left, right, value]
        counter = 0

        def leaf_value(rows):
            return -learning_rate * grad[rows].sum() / (hess[rows].sum() + self.l2 + 1e-12)

        def add_node(rows, hist, depth):
            nonlocal counter
            node_id = len(nodes)
            nodes.append([-1, 0, 0.0, -1, -1, leaf_value(rows)])
            split = self.find_split(hist) if (depth < self.max_depth and len(rows) >= 2 * self.min_samples_leaf) else None
            if split is not None:
                # heap: best gain first, then creation order
                heapq.heappush(heap, (-split[0], counter, node_id, rows, hist, depth, split))
                counter += 1
            return node_id

        heap: list = []
        root_rows = np.arange(n)
        add_node(root_rows, self.histograms(root_rows, grad, hess), 0)
        leaves = 1
        while heap and leaves < self.max_leaf_nodes:
            _, _, node_id, rows, hist, depth, (_, f, b) = heapq.heappop(heap)
            go_left = self.B[rows, f] <= b
            lrows, rrows = rows[go_left], rows[~go_left]
            # histogram subtraction: build the smaller child, derive the other
            if len(lrows) <= len(rrows):
                lh = self.histograms(lrows, grad, hess)
                rh = tuple(p - q for p, q in zip(hist, lh))
            else:
                rh = self.histograms(rrows, grad, hess)
                lh = tuple(p - q for p, q in zip(hist, rh))
            nodes[node_id][0:3] = [f, b, float(edges[f][b])]
            nodes[node_id][3] = add_node(lrows, lh, depth + 1)
            nodes[node_id][4] = add_node(rrows, rh, depth + 1)
            leaves += 1

        arr = list(zip(*nodes))
        return RegressionTree(
            feature=np.array(arr[0], dtype=np.int64),
            bin_threshold=np.array(arr[1], dtype=np.int64),
            threshold=np.array(arr[2], dtype=np.float64),
            left=np.array(arr[3], dtype=np.int64),
            right=np.array(arr[4], dtype=np.int64),
            value=np.array(arr[5], dtype=np.float64),
        )


def train_hist_gradient_boosting(X, y, max_iter: int = 200, max_bins: int = 256,
                                 learning_rate: float = 0.1, seed: int = 0, max_depth: int = 8,
                                 max_leaf_nodes: int = 31, min_samples_leaf: int = 20,
                                 l2_regularization: float = 0.0, weights=None,
                                 history: list | None = None) -> BoostedModel:
    """Fit a softmax-boosted ensemble of histogram trees.

    ``seed`` is recorded but the fit itself uses no randomness. If ``history``
    is a list, the training log-loss after each round is appended to it.
    """
    X, y = _check_xy(X, y)
    if max_bins < 2:
        raise ValueError("need at least two bins")
    classes = np.unique(y)
    k = len(classes)
    onehot = (y[:, None] == classes[None, :]).astype(np.float64)
    w = np.ones(len(y)) if weights is None else np.asarray(weights, dtype=np.float64)

    edges = [bin_edges(X[:, j], max_bins) for j in range(X.shape[1])]
    B = apply_bins(X, edges)
    n_bins = max(len(e) for e in edges) + 1
    # padding to the widest feature is harmless: unused bins stay empty
    grower = _HistTreeGrower(B, n_bins, max_depth, max_leaf_nodes, min_samples_leaf, l2_regularization)

    prior = np.clip((onehot * w[:, None]).sum(axis=0) / w.sum(), 1e-15, None)
    baseline = np.log(prior)
    if k == 1:
        return BoostedModel(classes, edges, baseline, [], learning_rate, max_bins, seed)
    scores = np.tile(baseline, (len(y), 1))
    rounds = []
    for _ in range(max_iter):
        p = softmax(scores)
        grad = (p - onehot) * w[:, None]
        hess = p * (1.0 - p) * w[:, None]
        round_trees = []
        for c in range(k):
            tree = grower.grow(grad[:, c], hess[:, c], edges, learning_rate)
            scores[:, c] += tree.predict_binned(B)
            round_trees.append(tree)
        rounds.append(round_trees)
        if history is not None:
            history.append(log_loss(softmax(scores), onehot, w))
    return BoostedModel(classes, edges, baseline, rounds, learning_rate, max_bins, seed)
