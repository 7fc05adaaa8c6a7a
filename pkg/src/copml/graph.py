"""Simple undirected graphs on dense vertex labels, graph6 I/O and enumeration.

Adjacency is stored as one Python int per vertex (bit ``v`` of ``adj[u]`` set
iff ``uv`` is an edge), which keeps neighborhood intersections cheap.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_VERTICES = 64
MAX_GRAPH6_VERTICES = 62
MAX_CANONICAL_VERTICES = 8
MAX_ENUMERATION_VERTICES = 7
UNREACHABLE = -1
GRAPH6_HEADER = ">>graph6<<"


class GraphError(ValueError):
    """Invalid graph construction or an unsupported operation."""


class UnsupportedSizeError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class Graph6ParseError(GraphError):
    """Malformed graph6 text; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class Graph6HeaderError(Graph6ParseError):
    pass


class Graph6CharacterError(Graph6ParseError):
    pass


class Graph6LengthError(Graph6ParseError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "m", "_hash")

    def __init__(self, n: int, adj: Sequence[int]):
        if not 1 <= n <= MAX_VERTICES:
            raise UnsupportedSizeError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        if len(adj) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(adj)}")
        rows = tuple(int(r) for r in adj)
        full = (1 << n) - 1
        for u, row in enumerate(rows):
            if row & ~full:
                raise GraphError(f"row {u} references a vertex >= {n}")
            if row >> u & 1:
                raise GraphError(f"self-loop at vertex {u}")
            for v in iter_bits(row):
                if not rows[v] >> u & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", rows)
        object.__setattr__(self, "m", sum(popcount(r) for r in rows) // 2)
        object.__setattr__(self, "_hash", hash((n, rows)))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        a = np.asarray(matrix).astype(bool)
        n = a.shape[0]
        adj = [sum(1 << int(v) for v in np.flatnonzero(a[u])) for u in range(n)]
        return cls(n, adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    def to_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is this graph's vertex ``perm[i]``."""
        inv = [0] * self.n
        for new, old in enumerate(perm):
            inv[old] = new
        return Graph.from_edges(self.n, ((inv[u], inv[v]) for u, v in self.edges()))

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, [full & ~r & ~(1 << u) for u, r in enumerate(self.adj)])

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges() if u in index and v in index),
        )

    def is_connected(self) -> bool:
        return connected_mask(self, 1, (1 << self.n) - 1) == (1 << self.n) - 1

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, g6={encode_graph6(self)!r})" if self.n <= 62 else f"Graph(n={self.n}, m={self.m})"


# --- traversal --------------------------------------------------------------


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def neighbors(g: Graph, v: int) -> set[int]:
    _check_vertex(g, v)
    return set(iter_bits(g.adj[v]))


def closed_neighborhood(g: Graph, v: int) -> set[int]:
    _check_vertex(g, v)
    return set(iter_bits(g.adj[v] | 1 << v))


def bfs_distances(g: Graph, v: int) -> list[int]:
    """Hop distances from ``v``; unreachable vertices get ``UNREACHABLE``."""
    _check_vertex(g, v)
    dist = [UNREACHABLE] * g.n
    dist[v] = 0
    seen = 1 << v
    frontier = 1 << v
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= g.adj[u]
        nxt &= ~seen
        for u in iter_bits(nxt):
            dist[u] = d
        seen |= nxt
        frontier = nxt
    return dist


def connected_mask(g: Graph, start: int, allowed: int) -> int:
    """Bitmask of vertices reachable from bitmask ``start`` inside ``allowed``."""
    seen = start & allowed
    frontier = seen
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= g.adj[u]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("graph is not connected")


# --- graph6 -----------------------------------------------------------------


def _pairs(n: int) -> Iterator[tuple[int, int]]:
    # graph6 bit order: upper triangle, column by column
    for j in range(1, n):
        for i in range(j):
            yield i, j


def decode_graph6(s: str | bytes) -> Graph:
    if isinstance(s, bytes):
        s = s.decode("ascii", errors="replace")
    s = s.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise Graph6HeaderError("empty graph6 string", 0)
    if s.startswith(">>"):
        raise Graph6HeaderError("unrecognized file header", 0)
    if s[0] == ":":
        raise Graph6HeaderError("sparse6 input is not supported", 0)
    if s[0] == "&":
        raise Graph6HeaderError("digraph6 input is not supported", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6CharacterError(f"character {ch!r} outside graph6 range", i)
    n = ord(s[0]) - 63
    if n == 63:
        raise Graph6HeaderError("long-form graph6 header (n > 62) is not supported", 0)
    if n == 0:
        raise Graph6HeaderError("graph6 header encodes zero vertices", 0)
    nbits = n * (n - 1) // 2
    nchars = -(-nbits // 6)
    body = s[1:]
    if len(body) < nchars:
        raise Graph6LengthError(f"bit vector truncated: need {nchars} characters, got {len(body)}", 1 + len(body))
    if len(body) > nchars:
        raise Graph6LengthError(f"{len(body) - nchars} trailing characters after bit vector", 1 + nchars)
    adj = [0] * n
    k = 0
    for i, j in _pairs(n):
        if (ord(body[k // 6]) - 63) >> (5 - k % 6) & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        k += 1
    return Graph(n, adj)


def encode_graph6(g: Graph) -> str:
    if g.n > MAX_GRAPH6_VERTICES:
        raise UnsupportedSizeError(f"graph6 short form supports n <= {MAX_GRAPH6_VERTICES}, got {g.n}")
    bits = [g.adj[i] >> j & 1 for i, j in _pairs(g.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = v << 1 | b
        out.append(chr(63 + v))
    return "".join(out)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, text)`` for non-blank graph6 lines, skipping the header."""
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if lineno == 1 and text.startswith(GRAPH6_HEADER):
            text = text[len(GRAPH6_HEADER):]
        if text:
            yield lineno, text


def write_graph6(path, graphs: Iterable[Graph]) -> int:
    count = 0
    with open(path, "w") as fh:
        for g in graphs:
            fh.write(encode_graph6(g) + "\n")
            count += 1
    return count


# --- canonical labeling and enumeration -----------------------------------


@lru_cache(maxsize=None)
def _relabel_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    # flat matrix index of graph6 bit k under permutation p, and bit weights
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)
    pairs = list(_pairs(n))
    rows = np.array([p[0] for p in pairs], dtype=np.intp)
    cols = np.array([p[1] for p in pairs], dtype=np.intp)
    index = perms[:, rows] * n + perms[:, cols]
    weights = np.exp2(np.arange(len(pairs) - 1, -1, -1, dtype=np.float64))
    return index, weights


def canonical_code(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Least graph6-order bit string over all relabelings, with a minimizing permutation.

    The bit string is returned as an int whose most significant bit is the
    first graph6 bit, so integer order equals lexicographic order.
    """
    if g.n > MAX_CANONICAL_VERTICES:
        raise UnsupportedSizeError(f"canonical_form supports n <= {MAX_CANONICAL_VERTICES}, got {g.n}")
    if g.n == 1:
        return 0, (0,)
    index, weights = _relabel_index(g.n)
    flat = g.to_matrix().astype(np.float64).ravel()
    # codes are < 2**28, exact in float64
    codes = flat.take(index) @ weights
    best = int(np.argmin(codes))
    return int(codes[best]), _nth_permutation(g.n, best)


def _nth_permutation(n: int, rank: int) -> tuple[int, ...]:
    # lexicographic rank, matching itertools.permutations order
    items = list(range(n))
    out = []
    for i in range(n, 0, -1):
        f = math.factorial(i - 1)
        q, rank = divmod(rank, f)
        out.append(items.pop(q))
    return tuple(out)


def canonical_form(g: Graph) -> Graph:
    """Relabeling of ``g`` with the lexicographically least adjacency bit string."""
    _, perm = canonical_code(g)
    return g.relabel(perm)


def _vertex_classes(g: Graph) -> list[list[int]]:
    # isomorphism-invariant vertex partition: degree, then neighbor degree multiset
    deg = g.degrees()
    key = [(deg[v], tuple(sorted(deg[u] for u in iter_bits(g.adj[v])))) for v in range(g.n)]
    groups: dict[tuple, list[int]] = {}
    for v in sorted(range(g.n), key=lambda v: key[v]):
        groups.setdefault(key[v], []).append(v)
    return [groups[k] for k in sorted(groups)]


def certificate(g: Graph) -> tuple[tuple, int]:
    """Isomorphism certificate that scales past the all-relabelings search.

    Vertices are first split into invariant classes; the least graph6 bit
    string is then taken only over relabelings that list the classes in
    order. Equal certificates iff isomorphic, but the code generally differs
    from ``canonical_code``.
    """
    classes = _vertex_classes(g)
    signature = tuple((len(c), g.degree(c[0])) for c in classes)
    pairs = list(_pairs(g.n))
    if not pairs:
        return signature, 0
    a = g.to_matrix().astype(np.uint8).ravel()
    blocks = [np.array(list(itertools.permutations(c)), dtype=np.intp) for c in classes]
    perms = blocks[0]
    for b in blocks[1:]:
        perms = np.hstack([np.repeat(perms, len(b), axis=0), np.tile(b, (len(perms), 1))])
    rows = np.array([p[0] for p in pairs], dtype=np.intp)
    cols = np.array([p[1] for p in pairs], dtype=np.intp)
    bits = a.take(perms[:, rows] * g.n + perms[:, cols])
    # np.unique sorts rows lexicographically
    best = np.unique(np.packbits(bits, axis=1), axis=0)[0]
    return signature, int.from_bytes(best.tobytes(), "big")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return certificate(g) == certificate(h)


def extend_by_vertex(g: Graph, attach: int) -> Graph:
    """Add vertex ``g.n`` adjacent to the vertices in bitmask ``attach``."""
    n = g.n
    adj = [row | ((attach >> u & 1) << n) for u, row in enumerate(g.adj)]
    adj.append(attach)
    return Graph(n + 1, adj)


def connected_classes(n: int, max_n: int = MAX_CANONICAL_VERTICES) -> list[Graph]:
    """Canonical representatives of connected graphs on ``n`` vertices, sorted by code.

    Every connected graph has a vertex whose removal leaves it connected, so
    extending each class on ``n - 1`` vertices by one vertex with a nonempty
    neighborhood reaches every class on ``n`` vertices.
    """
    if not 1 <= n <= max_n:
        raise UnsupportedSizeError(f"enumeration supports n in 1..{max_n}, got {n}")
    return [g for _, g in _connected_classes(n)]


@lru_cache(maxsize=None)
def _connected_classes(n: int) -> tuple[tuple[int, Graph], ...]:
    if n == 1:
        return ((0, Graph(1, [0])),)
    found: dict[int, Graph] = {}
    for _, base in _connected_classes(n - 1):
        for attach in range(1, 1 << (n - 1)):
            h = extend_by_vertex(base, attach)
            code, perm = canonical_code(h)
            if code not in found:
                found[code] = h.relabel(perm)
    return tuple(sorted(found.items()))


def enumerate_connected(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of connected graphs on ``n`` vertices."""
    if not 2 <= n <= MAX_ENUMERATION_VERTICES:
        raise UnsupportedSizeError(f"built-in enumeration supports 2 <= n <= {MAX_ENUMERATION_VERTICES}, got {n}")
    yield from connected_classes(n)


# --- a few named graphs used across tests and demos -------------------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
