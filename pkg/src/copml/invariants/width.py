"""Exact treewidth and chordality."""
from __future__ import annotations

from ..graph import Graph, iter_bits, popcount
from .cliques import clique_number


def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic BFS order via partition refinement (ties -> lowest vertex)."""
    partition = [list(range(g.n))]
    order = []
    while partition:
        v = partition[0].pop(0)
        if not partition[0]:
            partition.pop(0)
        order.append(v)
        refined = []
        for part in partition:
            inside = [u for u in part if g.adj[v] >> u & 1]
            outside = [u for u in part if not g.adj[v] >> u & 1]
            refined.extend(p for p in (inside, outside) if p)
        partition = refined
    return order


def is_perfect_elimination_order(g: Graph, order: list[int]) -> bool:
    """Check that each vertex's later neighbors form a clique."""
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in iter_bits(g.adj[v]) if position[u] > position[v]]
        if not later:
            continue
        parent = min(later, key=position.__getitem__)
        rest = 0
        for u in later:
            if u != parent:
                rest |= 1 << u
        if rest & ~g.adj[parent]:
            return False
    return True


def is_chordal(g: Graph) -> bool:
    # reversed LexBFS order is a PEO iff the graph is chordal
    return is_perfect_elimination_order(g, lex_bfs(g)[::-1])


def _outside_reach(adj: tuple[int, ...], inside: int, v: int) -> int:
    """Vertices outside ``inside | {v}`` adjacent to the component of ``v`` through ``inside``."""
    seen = 1 << v
    frontier = seen
    reach = 0
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adj[u]
        nxt &= ~seen
        reach |= nxt & ~inside
        frontier = nxt & inside
        seen |= frontier
    return reach & ~(1 << v)


def treewidth_exact(g: Graph) -> int:
    """Treewidth by dynamic programming over vertex subsets.

    ``tw[S]`` is the best achievable maximum back-degree when the vertices of
    ``S`` are eliminated first; eliminating ``v`` after ``S`` costs the number
    of vertices outside ``S | {v}`` reachable from ``v`` through ``S``.
    """
    n = g.n
    if n <= 1:
        return 0
    adj = g.adj
    size = 1 << n
    tw = [0] * size
    for s in range(1, size):
        best = n
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            prev = s ^ low
            cost = tw[prev]
            if cost < best:
                q = popcount(_outside_reach(adj, prev, v))
                cost = q if q > cost else cost
                if cost < best:
                    best = cost
            rest ^= low
        tw[s] = best
    return tw[size - 1]


def treewidth(g: Graph, chordal: bool | None = None, omega: int | None = None) -> int:
    """Exact treewidth; chordal graphs short-circuit to clique number minus one."""
    if chordal is None:
        chordal = is_chordal(g)
    if chordal:
        return (omega if omega is not None else clique_number(g)) - 1
    return treewidth_exact(g)


def chordal_treewidth(g: Graph, chordal: bool | None = None, omega: int | None = None) -> int | None:
    if chordal is None:
        chordal = is_chordal(g)
    if not chordal:
        return None
    return (omega if omega is not None else clique_number(g)) - 1
