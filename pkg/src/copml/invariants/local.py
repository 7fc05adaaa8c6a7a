"""Clustering, neighbor degrees and shortest-path statistics."""
from __future__ import annotations

from ..graph import Graph, bfs_distances, iter_bits, popcount


def local_clustering(g: Graph) -> list[float]:
    out = []
    for v in range(g.n):
        nb = g.adj[v]
        d = popcount(nb)
        if d <= 1:
            out.append(0.0)
            continue
        links = sum(popcount(g.adj[u] & nb) for u in iter_bits(nb)) // 2
        out.append(links / (d * (d - 1) / 2))
    return out


def clustering_stats(g: Graph) -> tuple[float, float, float]:
    c = local_clustering(g)
    return min(c), sum(c) / len(c), max(c)


def average_neighbor_degrees(g: Graph) -> list[float]:
    deg = g.degrees()
    out = []
    for v in range(g.n):
        nbrs = list(iter_bits(g.adj[v]))
        out.append(sum(deg[u] for u in nbrs) / len(nbrs) if nbrs else 0.0)
    return out


def avg_neighbor_degree_stats(g: Graph) -> tuple[float, float, float]:
    a = average_neighbor_degrees(g)
    return min(a), sum(a) / len(a), max(a)


def distance_matrix(g: Graph) -> list[list[int]]:
    return [bfs_distances(g, v) for v in range(g.n)]


def distance_stats(g: Graph, dist: list[list[int]] | None = None) -> tuple[int, int, int, float, int]:
    """(diameter, radius, vertices at eccentricity = diameter, mean distance, Wiener index)."""
    if dist is None:
        dist = distance_matrix(g)
    n = g.n
    if n == 1:
        return 0, 0, 1, 0.0, 0
    ecc = [max(row) for row in dist]
    diameter, radius = max(ecc), min(ecc)
    wiener = sum(dist[u][v] for u in range(n) for v in range(u + 1, n))
    return diameter, radius, ecc.count(diameter), wiener / (n * (n - 1) / 2), wiener
