"""Exact cops-and-robber solving on small connected graphs.

Cops are placed first, the robber second, and the cops move first. A cop
configuration is a sorted tuple of ``k`` vertices (cops may share a vertex).
Each player either stays put or steps to a neighbor; the robber is caught
when he shares a vertex with any cop.

``is_k_copwin`` computes the cop-winning states by backward induction with a
per-state escape counter. ``naive_copwin_oracle`` recomputes the same table
by repeated full sweeps and shares no code with it beyond the graph type.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .graph import DisconnectedGraphError, Graph, GraphError, iter_bits, popcount

MAX_COPS = 4

COP_MOVE = 0
ROBBER_MOVE = 1


@dataclass(frozen=True)
class SolveResult:
    copwin: bool
    winning_placement: Optional[tuple[int, ...]]
    states_processed: int


def _check_args(g: Graph, k: int) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("cops and robber is only solved on connected graphs")
    if not 1 <= k <= min(MAX_COPS, g.n):
        raise GraphError(f"cop count {k} outside 1..{min(MAX_COPS, g.n)}")


@dataclass
class GameTable:
    """Solved win table for ``k`` cops on ``g``.

    ``cop_won[c][r]`` / ``robber_won[c][r]`` say whether the cops win from
    configuration index ``c`` with the robber on ``r`` when it is the cops' /
    robber's turn. ``won_at`` holds the order in which winning states were
    discovered; following successors with smaller stamps always ends in capture.
    """

    g: Graph
    k: int
    configs: list[tuple[int, ...]]
    index: dict[tuple[int, ...], int]
    moves: list[list[int]]
    cop_won: list[list[bool]]
    robber_won: list[list[bool]]
    won_at: dict[tuple[int, int, int], int] = field(repr=False)
    states_processed: int = 0

    def winning_placements(self) -> list[tuple[int, ...]]:
        return [self.configs[c] for c, row in enumerate(self.cop_won) if all(row)]

    def cop_reply(self, cops: tuple[int, ...], robber: int) -> tuple[int, ...]:
        """Winning cop move from a cop-turn state, always making progress toward capture."""
        c = self.index[tuple(sorted(cops))]
        if not self.cop_won[c][robber]:
            raise GraphError("no winning cop move from a losing state")
        best = min(
            (self.won_at[(ROBBER_MOVE, d, robber)], d)
            for d in self.moves[c]
            if self.robber_won[d][robber]
        )
        return self.configs[best[1]]


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def cop_configurations(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations_with_replacement(range(n), k))


def solve_game(g: Graph, k: int) -> GameTable:
    _check_args(g, k)
    n = g.n
    closed = [[v, *iter_bits(g.adj[v])] for v in range(n)]
    configs = cop_configurations(n, k)
    index = {c: i for i, c in enumerate(configs)}
    occupied = [_mask(c) for c in configs]

    # joint cop moves, deduplicated as multisets; the move relation is symmetric
    moves = []
    for c in configs:
        targets = {index[tuple(sorted(p))] for p in itertools.product(*(closed[v] for v in c))}
        moves.append(sorted(targets))

    cop_won = [[bool(occ >> r & 1) for r in range(n)] for occ in occupied]
    robber_won = [row[:] for row in cop_won]
    escapes = [[len(closed[r]) for r in range(n)] for _ in configs]

    queue: deque[tuple[int, int, int]] = deque()
    won_at: dict[tuple[int, int, int], int] = {}
    for c, occ in enumerate(occupied):
        for r in iter_bits(occ):
            for turn in (COP_MOVE, ROBBER_MOVE):
                won_at[(turn, c, r)] = len(won_at)
                queue.append((turn, c, r))

    processed = 0
    while queue:
        turn, c, r = queue.popleft()
        processed += 1
        if turn == COP_MOVE:
            # robber stepped into (c, r) from some r_prev in N[r]
            row = robber_won[c]
            esc = escapes[c]
            for rp in closed[r]:
                if row[rp]:
                    continue
                esc[rp] -= 1
                if esc[rp] == 0:
                    row[rp] = True
                    won_at[(ROBBER_MOVE, c, rp)] = len(won_at)
                    queue.append((ROBBER_MOVE, c, rp))
        else:
            for cp in moves[c]:
                if not cop_won[cp][r]:
                    cop_won[cp][r] = True
                    won_at[(COP_MOVE, cp, r)] = len(won_at)
                    queue.append((COP_MOVE, cp, r))

    return GameTable(g, k, configs, index, moves, cop_won, robber_won, won_at, processed)


def is_k_copwin(g: Graph, k: int) -> SolveResult:
    """Decide whether ``k`` cops can force capture on connected ``g``."""
    table = solve_game(g, k)
    placements = table.winning_placements()
    return SolveResult(
        copwin=bool(placements),
        winning_placement=placements[0] if placements else None,
        states_processed=table.states_processed,
    )


def is_dismantlable(g: Graph) -> bool:
    """True iff ``g`` can be reduced to one vertex by deleting corners."""
    if not g.is_connected():
        raise DisconnectedGraphError("dismantlability is only defined here for connected graphs")
    alive = (1 << g.n) - 1
    closed = [g.adj[v] | 1 << v for v in range(g.n)]
    while popcount(alive) > 1:
        for u in iter_bits(alive):
            nu = closed[u] & alive
            # a dominating vertex must lie in N[u]
            if any(nu & ~closed[v] == 0 for v in iter_bits(nu & ~(1 << u))):
                alive &= ~(1 << u)
                break
        else:
            return False
    return True


def cop_number(g: Graph) -> int:
    """Smallest ``k`` such that ``g`` is ``k``-copwin."""
    if not g.is_connected():
        raise DisconnectedGraphError("cop number is only computed for connected graphs")
    if is_dismantlable(g):
        return 1
    for k in range(2, min(MAX_COPS, g.n) + 1):
        if is_k_copwin(g, k).copwin:
            return k
    raise GraphError(f"cop number exceeds the supported cap of {MAX_COPS}")


def naive_copwin_oracle(g: Graph, k: int) -> bool:
    """Reference k-copwin test by whole-table fixed-point iteration."""
    _check_args(g, k)
    verts = range(g.n)
    nbhd = {v: {v} | {u for u in verts if g.adj[v] >> u & 1} for v in verts}
    placements = sorted({tuple(sorted(p)) for p in itertools.product(verts, repeat=k)})
    steps = {
        p: {tuple(sorted(q)) for q in itertools.product(*(sorted(nbhd[v]) for v in p))}
        for p in placements
    }
    cop_turn = {(p, r): r in p for p in placements for r in verts}
    robber_turn = dict(cop_turn)
    changed = True
    while changed:
        changed = False
        for (p, r), won in robber_turn.items():
            if not won and all(cop_turn[(p, s)] for s in nbhd[r]):
                robber_turn[(p, r)] = True
                changed = True
        for (p, r), won in cop_turn.items():
            if not won and any(robber_turn[(q, r)] for q in steps[p]):
                cop_turn[(p, r)] = True
                changed = True
    return any(all(cop_turn[(p, r)] for r in verts) for p in placements)
