import random
from pathlib import Path

import networkx as nx
import pytest

from copml.dataset import DatasetStore, featurize_all, ingest_graph6, label_all, stratified_split
from copml.graph import Graph, connected_classes, write_graph6

ROOT = Path(__file__).resolve().parents[1]
GRAPH8_FILE = ROOT / "data" / "graph8c.g6"


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def graphs_upto(n: int):
    return [g for k in range(1, n + 1) for g in connected_classes(k)]


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_connected_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    while True:
        g = random_graph(rng, n, p)
        if g.is_connected():
            return g


def build_store(path, g6_files, seed=42, featurize=True, split=True) -> DatasetStore:
    store = DatasetStore.create(path)
    for f, tag in g6_files:
        ingest_graph6(store, f, tag)
    label_all(store)
    if featurize:
        featurize_all(store, seed)
    if split:
        stratified_split(store, 0.2, seed)
    store.save()
    return store


@pytest.fixture(scope="session")
def enumerated_g6(tmp_path_factory):
    """graph6 files of the built-in enumeration: ``{max_n: path}`` for n from 2 up."""
    d = tmp_path_factory.mktemp("enum")
    out = {}
    for max_n in (5, 6, 7):
        path = d / f"upto{max_n}.g6"
        write_graph6(path, [g for n in range(2, max_n + 1) for g in connected_classes(n)])
        out[max_n] = path
    return out


@pytest.fixture(scope="session")
def store6(tmp_path_factory, enumerated_g6):
    return build_store(tmp_path_factory.mktemp("store6"), [(enumerated_g6[6], "enum")])


@pytest.fixture(scope="session")
def store7(tmp_path_factory, enumerated_g6):
    return build_store(tmp_path_factory.mktemp("store7"), [(enumerated_g6[7], "enum")])


@pytest.fixture(scope="session")
def store8(tmp_path_factory, enumerated_g6):
    """All connected graphs on 2..8 vertices, labeled, featurized and split with seed 42."""
    return build_store(
        tmp_path_factory.mktemp("store8"),
        [(enumerated_g6[7], "enum"), (GRAPH8_FILE, "graph8c")],
    )


@pytest.fixture(scope="session")
def models8(store8):
    """Pipelines fitted on the n <= 8 training split (seed 42) with their test reports."""
    from copml.invariants import FEATURE_NAMES
    from copml.learn import evaluate, fit_pipeline

    X_train, y_train = store8.feature_matrix(store8.manifest.train_ids)
    X_test, y_test = store8.feature_matrix(store8.manifest.test_ids)
    out = {}
    for kind in ("dtree", "rforest", "histgb"):
        pipe = fit_pipeline(kind, X_train, y_train, FEATURE_NAMES, seed=42)
        out[kind] = (pipe, evaluate(pipe, X_test, y_test))
    return out


# -- acceptance report -------------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_configure(config):
    config.addinivalue_line("markers", "extended: slow gates that need the n = 8 dataset")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
