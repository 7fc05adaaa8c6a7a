import random

import networkx as nx
import pytest

from copml.copwin import (
    cop_number,
    is_dismantlable,
    is_k_copwin,
    naive_copwin_oracle,
    solve_game,
)
from copml.graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    closed_neighborhood,
    complete_graph,
    connected_classes,
    cycle_graph,
    decode_graph6,
    path_graph,
    petersen_graph,
    star_graph,
)
from copml.invariants import domination_number

from conftest import graphs_upto, random_connected_graph


def test_examples():
    assert is_k_copwin(complete_graph(1), 1).copwin
    pet = petersen_graph()
    assert not is_k_copwin(pet, 2).copwin
    assert is_k_copwin(pet, 3).copwin
    assert cop_number(pet) == 3
    c4 = cycle_graph(4)
    assert not is_k_copwin(c4, 1).copwin
    assert not naive_copwin_oracle(c4, 1)


def test_c4_is_the_only_two_cop_graph_on_four_vertices():
    two = [g for g in connected_classes(4) if cop_number(g) == 2]
    assert len(two) == 1 and nx.is_isomorphic(nx.cycle_graph(4), nx.from_edgelist(two[0].edges()))


def test_dismantlable_examples():
    assert is_dismantlable(path_graph(4))
    assert not is_dismantlable(cycle_graph(4))
    assert is_dismantlable(complete_graph(5))


def test_oracle_examples():
    c5 = cycle_graph(5)
    assert not naive_copwin_oracle(c5, 1)
    assert naive_copwin_oracle(c5, 2)


def test_solve_result_invariants():
    for g in graphs_upto(5):
        for k in range(1, min(2, g.n) + 1):
            res = is_k_copwin(g, k)
            assert (res.winning_placement is not None) == res.copwin
            if res.copwin:
                p = res.winning_placement
                assert len(p) == k and list(p) == sorted(p) and all(0 <= v < g.n for v in p)
            assert res.states_processed > 0


def test_rejects_disconnected_and_bad_k():
    empty2 = decode_graph6("A?")
    for fn in (lambda: is_k_copwin(empty2, 1), lambda: cop_number(empty2),
               lambda: is_dismantlable(empty2), lambda: naive_copwin_oracle(empty2, 1)):
        with pytest.raises(DisconnectedGraphError):
            fn()
    with pytest.raises(GraphError):
        is_k_copwin(path_graph(3), 0)
    with pytest.raises(GraphError):
        is_k_copwin(path_graph(3), 4)
    with pytest.raises(GraphError):
        is_k_copwin(petersen_graph(), 5)


def test_oracle_equivalence_exhaustive_n_le_5():
    for g in graphs_upto(5):
        for k in (1, 2):
            if k <= g.n:
                assert is_k_copwin(g, k).copwin == naive_copwin_oracle(g, k), (g, k)


def test_monotonicity_n_le_6():
    for g in graphs_upto(6):
        for k in (1, 2):
            if k + 1 <= g.n and is_k_copwin(g, k).copwin:
                assert is_k_copwin(g, k + 1).copwin


def test_dismantlable_iff_one_copwin_n_le_6():
    for g in graphs_upto(6):
        assert is_dismantlable(g) == is_k_copwin(g, 1).copwin


def test_cop_number_at_most_domination_number_n_le_6():
    for g in graphs_upto(6):
        assert cop_number(g) <= domination_number(g)


def test_six_vertex_breakdown():
    labels = [cop_number(g) for g in connected_classes(6)]
    assert (labels.count(1), labels.count(2), labels.count(3)) == (68, 44, 0)


def test_trees_need_one_cop():
    # all trees up to 7 vertices, checked by the oracle, plus random larger trees
    for n in range(2, 8):
        for t in nx.nonisomorphic_trees(n):
            g = Graph.from_edges(n, t.edges())
            assert cop_number(g) == 1
            assert naive_copwin_oracle(g, 1)
    rng = random.Random(1)
    for _ in range(20):
        n = rng.randint(8, 13)
        t = nx.random_labeled_tree(n, seed=rng.randint(0, 10**6))
        assert cop_number(Graph.from_edges(n, t.edges())) == 1
    assert cop_number(star_graph(12)) == 1


def _replay_captures(table, placement) -> bool:
    """Follow the table's cop strategy against every robber strategy; True if all end in capture."""
    g = table.g
    limit = 2 * len(table.configs) * g.n + 2

    def play(cops, r, moves_left):
        if r in cops:
            return True
        if moves_left == 0:
            return False
        cops = table.cop_reply(cops, r)
        if r in cops:
            return True
        return all(play(cops, s, moves_left - 1) for s in closed_neighborhood(g, r))

    return all(play(tuple(placement), r, limit) for r in range(g.n))


def test_witness_replay_captures_any_robber():
    graphs = [g for g in graphs_upto(6) if g.n >= 2]
    rng = random.Random(4)
    graphs += [random_connected_graph(rng, 7, 0.35) for _ in range(5)]
    graphs.append(petersen_graph())
    for g in graphs:
        k = cop_number(g)
        table = solve_game(g, k)
        res = is_k_copwin(g, k)
        assert res.copwin
        assert _replay_captures(table, res.winning_placement)


def test_determinism():
    rng = random.Random(12)
    for _ in range(10):
        g = random_connected_graph(rng, rng.randint(4, 8))
        runs = [(is_k_copwin(g, 1), is_k_copwin(g, 2), cop_number(g)) for _ in range(3)]
        assert runs[0] == runs[1] == runs[2]
