"""Planarity, asteroidal triples and spectral bipartivity."""
from __future__ import annotations

import itertools
import math

import networkx as nx
import numpy as np

from ..graph import Graph, iter_bits

JACOBI_TOL = 1e-10
JACOBI_MAX_SWEEPS = 100


class EigensolverError(ArithmeticError):
    pass


def is_planar(g: Graph) -> bool:
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return False
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    planar, _ = nx.check_planarity(h)
    return planar


def _component_labels(g: Graph, allowed: int) -> list[int]:
    """Component id per vertex inside ``allowed``; -1 for excluded vertices."""
    label = [-1] * g.n
    rest = allowed
    cid = 0
    while rest:
        seen = rest & -rest
        frontier = seen
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & allowed & ~seen
            seen |= frontier
        for u in iter_bits(seen):
            label[u] = cid
        cid += 1
        rest &= ~seen
    return label


def asteroidal_triple(g: Graph) -> tuple[int, int, int] | None:
    """First asteroidal triple in lexicographic order, or None."""
    full = (1 << g.n) - 1
    # labels[c][v]: component of v in g - N[c]
    labels = [_component_labels(g, full & ~(g.adj[c] | 1 << c)) for c in range(g.n)]

    def joined(a, b, c):
        la = labels[c][a]
        return la != -1 and la == labels[c][b]

    for a, b, c in itertools.combinations(range(g.n), 3):
        if joined(a, b, c) and joined(a, c, b) and joined(b, c, a):
            return a, b, c
    return None


def is_at_free(g: Graph) -> bool:
    return asteroidal_triple(g) is None


def jacobi_eigenvalues(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops below ``tol``.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < tol:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
    raise EigensolverError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def spectral_bipartivity(g: Graph) -> float:
    """sum(exp(-lambda)) / sum(exp(lambda)) over adjacency eigenvalues; 1 iff bipartite."""
    lam = jacobi_eigenvalues(g.to_matrix())
    return float(np.sum(np.exp(-lam)) / np.sum(np.exp(lam)))


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for u in iter_bits(g.adj[v]):
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    return False
    return True
