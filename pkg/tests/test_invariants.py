import itertools
import logging
import math
import random

import networkx as nx
import numpy as np
import pytest

from copml.graph import (
    Graph,
    complete_graph,
    connected_classes,
    cycle_graph,
    decode_graph6,
    path_graph,
    petersen_graph,
    star_graph,
)
from copml.invariants import (
    FEATURE_NAMES,
    SCHEMA_VERSION,
    FeatureVector,
    avg_neighbor_degree_stats,
    chordal_treewidth,
    clique_and_independence,
    clique_cover_estimate,
    clique_number,
    clustering_stats,
    count_min_node_cuts,
    distance_stats,
    domination_and_covers,
    domination_number,
    extract_features,
    has_bridge,
    independence_number,
    is_at_free,
    is_bipartite,
    is_chordal,
    is_planar,
    jacobi_eigenvalues,
    k_clique_communities_3,
    maxcut_heuristics,
    maximal_cliques,
    maximum_matching_size,
    node_connectivity,
    pairwise_connectivity_stats,
    spectral_bipartivity,
    structural_flags,
    treewidth_exact,
)
from copml.invariants import features as features_mod
from copml.invariants.structure import EigensolverError

from conftest import graphs_upto, random_connected_graph, to_nx

# -- independent brute-force oracles ------------------------------------------------


def _subsets(n):
    for size in range(n + 1):
        yield from itertools.combinations(range(n), size)


def brute_clique(g):
    return max(len(s) for s in _subsets(g.n) if all(g.adj[u] >> v & 1 for u, v in itertools.combinations(s, 2)))


def brute_independence(g):
    return max(len(s) for s in _subsets(g.n) if not any(g.adj[u] >> v & 1 for u, v in itertools.combinations(s, 2)))


def brute_domination(g):
    full = set(range(g.n))
    for s in _subsets(g.n):
        covered = set(s)
        for v in s:
            covered |= {u for u in range(g.n) if g.adj[v] >> u & 1}
        if covered == full:
            return len(s)


def brute_treewidth(g):
    # minimum over elimination orderings of the largest back-degree
    best = g.n
    for order in itertools.permutations(range(g.n)):
        nbrs = {v: {u for u in range(g.n) if g.adj[v] >> u & 1} for v in range(g.n)}
        width = 0
        for v in order:
            width = max(width, len(nbrs[v]))
            for a, b in itertools.combinations(nbrs[v], 2):
                nbrs[a].add(b)
                nbrs[b].add(a)
            for u in nbrs[v]:
                nbrs[u].discard(v)
            del nbrs[v]
        best = min(best, width)
    return best


def brute_kappa(g):
    h = to_nx(g)
    for size in range(g.n - 1):
        for s in itertools.combinations(range(g.n), size):
            rest = h.subgraph(set(range(g.n)) - set(s))
            if not nx.is_connected(rest):
                return size
    return g.n - 1


SMALL = [g for g in graphs_upto(6) if g.n >= 2]


# -- examples -----------------------------------------------------------------------


def test_feature_examples():
    k4 = extract_features(complete_graph(4))
    assert (k4["density"], k4["clique_number"], k4["treewidth"], k4["independence_number"]) == (1.0, 4, 3, 1)
    p3 = extract_features(path_graph(3))
    assert (p3["wiener_index"], p3["diameter"], p3["radius"], p3["domination_number"]) == (4, 2, 1, 1)
    pet = extract_features(petersen_graph())
    assert (pet["node_connectivity"], pet["clique_number"], pet["independence_number"], pet["diameter"]) == (3, 2, 4, 2)


def test_petersen_against_oracles():
    g = petersen_graph()
    h = to_nx(g)
    assert node_connectivity(g) == nx.node_connectivity(h) == 3
    assert clique_number(g) == brute_clique(g) == 2
    assert independence_number(g) == brute_independence(g) == 4
    assert domination_number(g) == brute_domination(g) == 3
    assert k_clique_communities_3(g) == 0 and sum(nx.triangles(h).values()) == 0
    d = distance_stats(g)
    assert (d[0], d[1]) == (nx.diameter(h), nx.radius(h)) == (2, 2)


def test_connectivity_examples():
    c5 = cycle_graph(5)
    assert node_connectivity(c5) == 2 and not has_bridge(c5)
    rng = random.Random(0)
    for n in range(2, 12):
        t = nx.random_labeled_tree(n, seed=rng.randint(0, 999))
        g = Graph.from_edges(n, t.edges())
        assert node_connectivity(g) == 1 and has_bridge(g)
        assert treewidth_exact(g) == 1
        assert is_planar(g) and is_chordal(g)
        assert spectral_bipartivity(g) == pytest.approx(1.0, abs=1e-9)


def test_clique_examples():
    assert clique_and_independence(complete_graph(4))[:3] == (4, 1, 1)
    c5 = cycle_graph(5)
    assert (clique_number(c5), independence_number(c5), len(maximal_cliques(c5))) == (2, 2, 5)


def test_width_examples():
    assert treewidth_exact(complete_graph(5)) == 4
    assert treewidth_exact(cycle_graph(6)) == brute_treewidth(cycle_graph(6)) == 2
    assert chordal_treewidth(cycle_graph(6)) is None
    assert chordal_treewidth(complete_graph(5)) == 4


def test_local_examples():
    assert clustering_stats(complete_graph(3)) == (1.0, 1.0, 1.0)
    assert clustering_stats(star_graph(3)) == (0.0, 0.0, 0.0)
    lo, mean, hi = avg_neighbor_degree_stats(path_graph(3))
    assert (lo, hi) == (1.0, 2.0) and mean == pytest.approx(5 / 3)


def test_distance_examples():
    diam, rad, _, _, wiener = distance_stats(path_graph(4))
    assert (diam, rad, wiener) == (3, 2, 10)
    for n in range(2, 8):
        d = distance_stats(complete_graph(n))
        assert d[0] == 1 and d[3] == 1.0


def test_cover_examples():
    assert domination_and_covers(star_graph(4)) == (1, 1, 4)
    assert domination_and_covers(cycle_graph(4)) == (2, 2, 2)


def test_structure_examples():
    c4 = cycle_graph(4)
    assert spectral_bipartivity(c4) == pytest.approx(1.0, abs=1e-9)
    assert not is_chordal(c4)
    assert not is_planar(complete_graph(5))
    assert structural_flags(path_graph(3))[:3] == (True, True, True)


def test_maxcut_examples():
    for seed in range(20):
        assert maxcut_heuristics(complete_graph(2), seed)[1] == 1


def test_maxcut_properties():
    rng = random.Random(8)
    for g in SMALL + [random_connected_graph(rng, rng.randint(7, 13)) for _ in range(40)]:
        for seed in range(5):
            rand, local = maxcut_heuristics(g, seed)
            assert local >= rand
            assert local >= g.m / 2
            assert local <= g.m


# -- exhaustive exactness cross-checks, n <= 6 --------------------------------------


def test_clique_and_independence_exact_n_le_6():
    for g in SMALL:
        assert clique_number(g) == brute_clique(g)
        assert independence_number(g) == brute_independence(g)


def test_domination_exact_n_le_6():
    for g in SMALL:
        assert domination_number(g) == brute_domination(g)


def test_treewidth_exact_n_le_6():
    for g in SMALL:
        assert treewidth_exact(g) == brute_treewidth(g)


def test_node_connectivity_exact_n_le_6():
    for g in SMALL:
        assert node_connectivity(g) == brute_kappa(g)


# -- agreement with networkx on a wider range --------------------------------------


def _compare_sample():
    rng = random.Random(21)
    return [g for g in graphs_upto(6) if g.n >= 2] + [random_connected_graph(rng, rng.randint(7, 11), rng.uniform(0.2, 0.7)) for _ in range(60)]


def test_agreement_with_networkx():
    for g in _compare_sample():
        h = to_nx(g)
        assert has_bridge(g) == nx.has_bridges(h)
        assert len(maximal_cliques(g)) == sum(1 for _ in nx.find_cliques(h))
        assert is_chordal(g) == nx.is_chordal(h)
        assert is_planar(g) == nx.check_planarity(h)[0]
        assert is_at_free(g) == nx.is_at_free(h)
        assert is_bipartite(g) == nx.is_bipartite(h)
        assert maximum_matching_size(g) == len(nx.max_weight_matching(h, maxcardinality=True))
        assert k_clique_communities_3(g) == sum(1 for _ in nx.community.k_clique_communities(h, 3))
        cl = nx.clustering(h)
        assert clustering_stats(g) == pytest.approx((min(cl.values()), sum(cl.values()) / g.n, max(cl.values())))
        nd = nx.average_neighbor_degree(h)
        assert avg_neighbor_degree_stats(g) == pytest.approx((min(nd.values()), sum(nd.values()) / g.n, max(nd.values())))
        ecc = nx.eccentricity(h)
        diam, rad, count, avg, wiener = distance_stats(g)
        assert (diam, rad) == (max(ecc.values()), min(ecc.values()))
        assert count == sum(1 for e in ecc.values() if e == diam)
        assert avg == pytest.approx(nx.average_shortest_path_length(h))
        assert wiener == nx.wiener_index(h)


def test_pairwise_connectivity_against_networkx():
    rng = random.Random(31)
    for g in [g for g in graphs_upto(5) if g.n >= 2] + [random_connected_graph(rng, 8) for _ in range(10)]:
        h = to_nx(g)
        vals = [nx.node_connectivity(h, u, v) if not h.has_edge(u, v) else
                _adjacent_local_connectivity(h, u, v) for u, v in itertools.combinations(range(g.n), 2)]
        assert pairwise_connectivity_stats(g) == pytest.approx((min(vals), max(vals), sum(vals) / len(vals)))


def _adjacent_local_connectivity(h, u, v):
    # internally disjoint u-v paths in a graph where u ~ v: the edge plus paths avoiding it
    h2 = h.copy()
    h2.remove_edge(u, v)
    return 1 + (nx.node_connectivity(h2, u, v) if nx.has_path(h2, u, v) else 0)


def test_min_node_cuts_against_networkx():
    rng = random.Random(41)
    sample = [g for g in graphs_upto(6) if g.n >= 3] + [random_connected_graph(rng, 9, 0.3) for _ in range(15)]
    for g in sample:
        if g.m == g.n * (g.n - 1) // 2:
            continue  # complete graphs have no separating set
        h = to_nx(g)
        assert count_min_node_cuts(g) == sum(1 for _ in nx.all_node_cuts(h))


def test_clique_cover_estimate_is_a_valid_bound():
    for g in _compare_sample():
        est = clique_cover_estimate(g)
        assert independence_number(g) <= est <= g.n


# -- relational identities, n <= 7 ----------------------------------------------------


def test_relational_identities_n_le_7():
    for g in graphs_upto(7):
        if g.n < 2:
            continue
        f = extract_features(g)
        assert f["min_vertex_cover_size"] + f["independence_number"] == g.n
        assert f["clique_number"] <= f["treewidth"] + 1
        assert f["radius"] <= f["diameter"] <= 2 * f["radius"]
        assert abs(f["wiener_index"] - f["avg_shortest_path"] * math.comb(g.n, 2)) <= 1e-9
        assert f["num_nodes"] == g.n and f["num_edges"] == g.m


def test_spectral_bipartivity_iff_bipartite_n_le_6():
    for g in SMALL:
        b = spectral_bipartivity(g)
        assert 0.0 < b <= 1.0 + 1e-12
        two_colorable = nx.is_bipartite(to_nx(g))
        assert (abs(b - 1.0) <= 1e-9) == two_colorable


def test_jacobi_against_numpy():
    rng = np.random.default_rng(3)
    for n in range(1, 14):
        a = rng.normal(size=(n, n))
        a = a + a.T
        assert np.allclose(np.sort(jacobi_eigenvalues(a)), np.linalg.eigvalsh(a), atol=1e-8)


def test_jacobi_reports_non_convergence():
    a = np.random.default_rng(0).normal(size=(8, 8))
    with pytest.raises(EigensolverError):
        jacobi_eigenvalues(a + a.T, max_sweeps=1)


# -- feature vector contract ----------------------------------------------------------


def test_schema_order_and_version():
    assert len(FEATURE_NAMES) == len(set(FEATURE_NAMES)) == 38
    rng = random.Random(2)
    for g in [path_graph(2), petersen_graph()] + [random_connected_graph(rng, rng.randint(2, 13)) for _ in range(10)]:
        f = extract_features(g, seed=rng.randint(0, 100))
        assert tuple(f.values) == FEATURE_NAMES
        assert f.schema_version == SCHEMA_VERSION
        assert all(v is None or math.isfinite(v) for v in f.as_list())


def test_chordal_treewidth_missing_marker():
    assert extract_features(cycle_graph(5))["chordal_treewidth"] is None
    assert extract_features(complete_graph(3))["chordal_treewidth"] == 2


def test_feature_vector_rejects_bad_values():
    good = extract_features(path_graph(3)).values
    with pytest.raises(ValueError):
        FeatureVector({**good, "density": float("nan")})
    with pytest.raises(ValueError):
        FeatureVector(dict(reversed(list(good.items()))))


def test_extract_rejects_disconnected_and_large():
    with pytest.raises(ValueError):
        extract_features(decode_graph6("A?"))
    with pytest.raises(ValueError):
        extract_features(path_graph(14))


def test_failed_feature_becomes_missing(monkeypatch, caplog):
    def boom(g):
        raise RuntimeError("kernel failure")

    monkeypatch.setattr(features_mod.structure, "spectral_bipartivity", boom)
    with caplog.at_level(logging.WARNING):
        f = extract_features(cycle_graph(5))
    assert f["spectral_bipartivity"] is None
    assert f["is_planar"] == 1.0
    assert "spectral_bipartivity" in caplog.text


def test_feature_determinism():
    rng = random.Random(6)
    for _ in range(10):
        g = random_connected_graph(rng, rng.randint(3, 12))
        seed = rng.randint(0, 2**31)
        a, b = extract_features(g, seed), extract_features(g, seed)
        assert [repr(x) for x in a.as_list()] == [repr(x) for x in b.as_list()]


def test_seed_only_moves_maxcut_features():
    g = petersen_graph()
    a, b = extract_features(g, 1), extract_features(g, 2)
    differ = {k for k in FEATURE_NAMES if a[k] != b[k]}
    assert differ <= {"maxcut_random_partition", "maxcut_one_exchange"}
