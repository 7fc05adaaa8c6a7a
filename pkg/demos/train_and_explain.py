"""End to end on every connected graph with at most 7 vertices.

Builds a store in a temporary directory, labels each graph with its cop
number, computes features, trains the four classifiers on an 80/20
stratified split and ranks features by permutation importance.
Takes about half a minute.
"""
import tempfile

from copml.dataset import DatasetStore, featurize_all, ingest_graph6, label_all, stratified_split
from copml.graph import connected_classes, write_graph6
from copml.invariants import FEATURE_NAMES
from copml.learn import evaluate, fit_pipeline, permutation_importance

SEED = 42

with tempfile.TemporaryDirectory() as tmp:
    write_graph6(f"{tmp}/graphs.g6", [g for n in range(2, 8) for g in connected_classes(n)])
    store = DatasetStore.create(f"{tmp}/store")
    print("ingested", ingest_graph6(store, f"{tmp}/graphs.g6", "demo").ingested)
    label_all(store)
    featurize_all(store, SEED)
    for n, row in store.label_counts().items():
        print(f"  n={n}: c=1 {row[1]:4d}   c=2 {row[2]:4d}")
    split = stratified_split(store, 0.2, SEED)

X_train, y_train = store.feature_matrix(split.train_ids)
X_test, y_test = store.feature_matrix(split.test_ids)
print(f"train {len(y_train)} rows, test {len(y_test)} rows")

models = {}
for kind in ("dtree", "rforest", "histgb", "logreg"):
    models[kind] = fit_pipeline(kind, X_train, y_train, FEATURE_NAMES, seed=SEED)
    rep = evaluate(models[kind], X_test, y_test)
    print(f"{kind:8s} accuracy {rep.accuracy:.4f}  macro-F1 {rep.macro_f1:.4f}  confusion {rep.confusion}")

ranking = permutation_importance(models["rforest"], X_test, y_test, repeats=10, seed=SEED,
                                 feature_names=FEATURE_NAMES)
print("most useful features for the forest:")
for name, drop in ranking[:8]:
    print(f"  {name:28s} {drop:.4f}")
