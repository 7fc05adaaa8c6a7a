"""Randomized and local-search max-cut heuristics."""
from __future__ import annotations

import random

from ..graph import Graph, iter_bits, popcount


def cut_size(g: Graph, side: int) -> int:
    """Edges crossing the bipartition given by bitmask ``side``."""
    return sum(popcount(g.adj[u] & ~side) for u in iter_bits(side))


def random_partition(g: Graph, seed: int) -> int:
    rng = random.Random(seed)
    side = 0
    for v in range(g.n):
        if rng.random() < 0.5:
            side |= 1 << v
    return side


def one_exchange(g: Graph, side: int) -> int:
    """Move single vertices across the cut while some move strictly improves it.

    Each step takes the largest gain (lowest vertex on ties).
    """
    while True:
        best_gain, best_v = 0, -1
        for v in range(g.n):
            same = g.adj[v] & side if side >> v & 1 else g.adj[v] & ~side
            gain = 2 * popcount(same) - popcount(g.adj[v])
            if gain > best_gain:
                best_gain, best_v = gain, v
        if best_v < 0:
            return side
        side ^= 1 << best_v


def maxcut_heuristics(g: Graph, seed: int) -> tuple[int, int]:
    start = random_partition(g, seed)
    return cut_size(g, start), cut_size(g, one_exchange(g, start))
