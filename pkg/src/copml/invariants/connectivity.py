"""Vertex connectivity, minimum vertex cuts and bridges."""
from __future__ import annotations

import itertools
from collections import deque

from ..graph import Graph, connected_mask, iter_bits


def local_connectivity(g: Graph, s: int, t: int) -> int:
    """Maximum number of internally vertex-disjoint ``s``-``t`` paths.

    Unit-capacity max flow on the split network: vertex ``v`` becomes
    ``v_in = 2v`` -> ``v_out = 2v + 1`` with capacity 1 (unbounded for s, t),
    and every edge ``uv`` becomes ``u_out -> v_in`` and ``v_out -> u_in``.
    A direct edge ``st`` counts as one path.
    """
    if s == t:
        raise ValueError("local connectivity needs two distinct vertices")
    n = g.n
    big = n
    cap: dict[tuple[int, int], int] = {}
    out: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a, b, c):
        if (a, b) not in cap:
            out[a].append(b)
            out[b].append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, 1)
        arc(2 * v + 1, 2 * u, 1)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in out[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return flow
        b = sink
        while parent[b] is not None:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1


def pairwise_connectivity(g: Graph) -> dict[tuple[int, int], int]:
    return {(u, v): local_connectivity(g, u, v) for u, v in itertools.combinations(range(g.n), 2)}


def node_connectivity(g: Graph, pairwise: dict[tuple[int, int], int] | None = None) -> int:
    """Global vertex connectivity; ``n - 1`` for complete graphs."""
    n = g.n
    if g.m == n * (n - 1) // 2:
        return n - 1
    if pairwise is None:
        pairs = ((u, v) for u, v in itertools.combinations(range(n), 2) if not g.adj[u] >> v & 1)
        return min(local_connectivity(g, u, v) for u, v in pairs)
    return min(k for (u, v), k in pairwise.items() if not g.adj[u] >> v & 1)


def pairwise_connectivity_stats(g: Graph, pairwise=None) -> tuple[float, float, float]:
    if g.n < 2:
        return 0.0, 0.0, 0.0
    values = list((pairwise or pairwise_connectivity(g)).values())
    return float(min(values)), float(max(values)), sum(values) / len(values)


def count_min_node_cuts(g: Graph, kappa: int | None = None) -> int:
    """Number of vertex sets of size kappa(G) whose removal disconnects ``g``."""
    n = g.n
    if kappa is None:
        kappa = node_connectivity(g)
    full = (1 << n) - 1
    if g.m == n * (n - 1) // 2:
        return 0
    count = 0
    for cut in itertools.combinations(range(n), kappa):
        mask = 0
        for v in cut:
            mask |= 1 << v
        rest = full & ~mask
        start = rest & -rest
        if connected_mask(g, start, rest) != rest:
            count += 1
    return count


def has_bridge(g: Graph) -> bool:
    """Bridge detection by one iterative DFS low-link pass."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(list(iter_bits(g.adj[root]))))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(list(iter_bits(g.adj[w])))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    return True
    return False
