"""Cliques, independent sets, domination and matchings on bitset graphs."""
from __future__ import annotations

from functools import lru_cache

from ..graph import Graph, iter_bits, popcount


def _max_clique_in(adj: tuple[int, ...], candidates: int) -> int:
    """Bitmask of a maximum clique inside ``candidates`` (lowest vertices win ties)."""
    best = 0
    best_size = 0

    def expand(clique: int, size: int, cand: int) -> None:
        nonlocal best, best_size
        if not cand:
            if size > best_size:
                best, best_size = clique, size
            return
        # greedy coloring bound: vertices of one color class are pairwise nonadjacent
        colors = 0
        rest = cand
        while rest:
            colors += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~adj[v] & ~(1 << v)
                rest &= ~(1 << v)
        if size + colors <= best_size:
            return
        while cand:
            if size + popcount(cand) <= best_size:
                return
            v = (cand & -cand).bit_length() - 1
            expand(clique | 1 << v, size + 1, cand & adj[v])
            cand &= ~(1 << v)

    expand(0, 0, candidates)
    return best


def max_clique(g: Graph) -> int:
    return _max_clique_in(g.adj, (1 << g.n) - 1)


def clique_number(g: Graph) -> int:
    return popcount(max_clique(g))


def independence_number(g: Graph) -> int:
    return clique_number(g.complement())


def maximal_cliques(g: Graph) -> list[int]:
    """All maximal cliques as bitmasks (Bron-Kerbosch with pivoting)."""
    adj = g.adj
    found: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(r)
            return
        pivot = max(iter_bits(p | x), key=lambda u: popcount(p & adj[u]))
        for v in iter_bits(p & ~adj[pivot]):
            bk(r | 1 << v, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk(0, (1 << g.n) - 1, 0)
    return found


def clique_cover_estimate(g: Graph) -> int:
    """Number of cliques used when repeatedly removing a maximum clique until empty."""
    remaining = (1 << g.n) - 1
    count = 0
    while remaining:
        remaining &= ~_max_clique_in(g.adj, remaining)
        count += 1
    return count


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u in range(g.n):
        for v in iter_bits(g.adj[u] >> (u + 1) << (u + 1)):
            for w in iter_bits(g.adj[u] & g.adj[v] >> (v + 1) << (v + 1)):
                out.append((u, v, w))
    return out


def k_clique_communities_3(g: Graph) -> int:
    """Components of the triangle graph where triangles sharing an edge are adjacent."""
    tris = triangles(g)
    parent = list(range(len(tris)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_edge: dict[tuple[int, int], int] = {}
    for i, (a, b, c) in enumerate(tris):
        for e in ((a, b), (a, c), (b, c)):
            if e in by_edge:
                parent[find(i)] = find(by_edge[e])
            else:
                by_edge[e] = i
    return len({find(i) for i in range(len(tris))})


def domination_number(g: Graph) -> int:
    """Exact domination number by branch and bound.

    Branch on the lowest undominated vertex: one of its closed neighbors must
    join the set. The bound divides the undominated count by the largest
    closed-neighborhood size.
    """
    n = g.n
    closed = [g.adj[v] | 1 << v for v in range(n)]
    full = (1 << n) - 1
    max_cover = max(popcount(c) for c in closed)
    best = n

    def search(dominated: int, size: int) -> None:
        nonlocal best
        if dominated == full:
            best = min(best, size)
            return
        left = popcount(full & ~dominated)
        if size + -(-left // max_cover) >= best:
            return
        undominated = full & ~dominated
        v = (undominated & -undominated).bit_length() - 1
        options = sorted(iter_bits(closed[v]), key=lambda u: -popcount(closed[u] & undominated))
        for u in options:
            search(dominated | closed[u], size + 1)

    search(0, 0)
    return best


def maximum_matching_size(g: Graph) -> int:
    adj = g.adj

    @lru_cache(maxsize=None)
    def nu(alive: int) -> int:
        if not alive:
            return 0
        v = (alive & -alive).bit_length() - 1
        rest = alive & ~(1 << v)
        best = nu(rest)
        for u in iter_bits(adj[v] & rest):
            best = max(best, 1 + nu(rest & ~(1 << u)))
        return best

    return nu((1 << g.n) - 1)


def domination_and_covers(g: Graph, alpha: int | None = None) -> tuple[int, int, int]:
    """(domination number, minimum vertex cover size, minimum edge cover size)."""
    if alpha is None:
        alpha = independence_number(g)
    return domination_number(g), g.n - alpha, g.n - maximum_matching_size(g)
