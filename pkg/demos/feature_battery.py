"""The structural features behind the classifiers, on three familiar graphs."""
from copml.graph import complete_graph, cycle_graph, petersen_graph
from copml.invariants import FEATURE_NAMES, extract_features

graphs = {"K5": complete_graph(5), "C6": cycle_graph(6), "Petersen": petersen_graph()}
vectors = {name: extract_features(g, seed=0) for name, g in graphs.items()}

print(f"{'feature':28s}" + "".join(f"{name:>10s}" for name in graphs))
for key in FEATURE_NAMES:
    cells = []
    for name in graphs:
        v = vectors[name][key]
        cells.append(f"{'-':>10s}" if v is None else f"{v:10.4g}")
    print(f"{key:28s}" + "".join(cells))

# Missing entries ("-") are features that do not apply, e.g. chordal treewidth
# of a graph that is not chordal.
