"""The fixed-schema feature vector computed for every dataset graph."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from importlib import resources

from ..graph import Graph, UnsupportedSizeError, require_connected
from . import cliques, connectivity, local, maxcut, structure, width

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MAX_FEATURE_VERTICES = 13


def _load_schema() -> tuple[str, ...]:
    text = resources.files("copml").joinpath("feature_schema_v1.txt").read_text()
    names = [line.split("#")[0].strip() for line in text.splitlines()]
    return tuple(n for n in names if n)


FEATURE_NAMES: tuple[str, ...] = _load_schema()


@dataclass(frozen=True)
class FeatureVector:
    """Feature name -> float, with ``None`` marking an inapplicable or failed feature."""

    values: dict[str, float | None]
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        if tuple(self.values) != FEATURE_NAMES:
            raise ValueError("feature keys do not match the published schema")
        for k, v in self.values.items():
            if v is not None and not math.isfinite(v):
                raise ValueError(f"non-finite value for feature {k}")

    def __getitem__(self, name: str) -> float | None:
        return self.values[name]

    def as_list(self) -> list[float | None]:
        return [self.values[k] for k in FEATURE_NAMES]


def _groups(g: Graph, seed: int):
    """Yield ``(feature names, thunk)`` pairs; shared intermediates are memoized."""
    memo: dict[str, object] = {}

    def get(key, fn):
        if key not in memo:
            memo[key] = fn()
        return memo[key]

    n, m = g.n, g.m
    degrees = g.degrees()
    pairwise = lambda: get("pairwise", lambda: connectivity.pairwise_connectivity(g))
    kappa = lambda: get("kappa", lambda: connectivity.node_connectivity(g, pairwise()) if n > 1 else 0)
    omega = lambda: get("omega", lambda: cliques.clique_number(g))
    alpha = lambda: get("alpha", lambda: cliques.independence_number(g))
    chordal = lambda: get("chordal", lambda: width.is_chordal(g))

    yield ("num_nodes", "num_edges", "density", "min_degree", "max_degree"), lambda: (
        n, m, 2 * m / (n * (n - 1)) if n > 1 else 0.0, min(degrees), max(degrees))
    yield ("node_connectivity",), lambda: (kappa(),)
    yield ("min_pairwise_connectivity", "max_pairwise_connectivity", "avg_pairwise_connectivity"), \
        lambda: connectivity.pairwise_connectivity_stats(g, pairwise())
    yield ("num_min_node_cuts",), lambda: (connectivity.count_min_node_cuts(g, kappa()),)
    yield ("has_bridge",), lambda: (connectivity.has_bridge(g),)
    yield ("clique_number",), lambda: (omega(),)
    yield ("num_maximal_cliques",), lambda: (len(cliques.maximal_cliques(g)),)
    yield ("k_clique_communities_3",), lambda: (cliques.k_clique_communities_3(g),)
    yield ("clique_cover_estimate",), lambda: (cliques.clique_cover_estimate(g),)
    yield ("independence_number",), lambda: (alpha(),)
    yield ("treewidth",), lambda: (width.treewidth(g, chordal(), omega()),)
    yield ("chordal_treewidth",), lambda: (width.chordal_treewidth(g, chordal(), omega()),)
    yield ("min_clustering", "avg_clustering", "max_clustering"), lambda: local.clustering_stats(g)
    yield ("min_avg_neighbor_degree", "mean_avg_neighbor_degree", "max_avg_neighbor_degree"), \
        lambda: local.avg_neighbor_degree_stats(g)
    yield ("diameter", "radius", "max_eccentricity_count", "avg_shortest_path", "wiener_index"), \
        lambda: local.distance_stats(g)
    yield ("domination_number", "min_vertex_cover_size", "min_edge_cover_size"), \
        lambda: cliques.domination_and_covers(g, alpha())
    yield ("is_planar",), lambda: (structure.is_planar(g),)
    yield ("is_chordal",), lambda: (chordal(),)
    yield ("is_at_free",), lambda: (structure.is_at_free(g),)
    yield ("spectral_bipartivity",), lambda: (structure.spectral_bipartivity(g),)
    yield ("maxcut_random_partition", "maxcut_one_exchange"), lambda: maxcut.maxcut_heuristics(g, seed)


def extract_features(g: Graph, seed: int = 0) -> FeatureVector:
    """Compute every schema feature of connected ``g``; failures become ``None``."""
    require_connected(g)
    if g.n > MAX_FEATURE_VERTICES:
        raise UnsupportedSizeError(f"features are defined for n <= {MAX_FEATURE_VERTICES}, got {g.n}")
    values: dict[str, float | None] = {}
    for names, thunk in _groups(g, seed):
        try:
            result = thunk()
        except Exception as exc:  # one bad kernel must not sink the whole record
            log.warning("feature group %s failed on %d-vertex graph: %s", names, g.n, exc)
            result = (None,) * len(names)
        for name, value in zip(names, result):
            values[name] = None if value is None else float(value)
    return FeatureVector({k: values[k] for k in FEATURE_NAMES})
