"""Write one graph6 line per isomorphism class of connected graphs on N vertices.

Used to produce ``data/graph8c.g6`` (N=8), standing in for McKay's
``graph8c.g6`` when that file is not at hand. Classes are grown one vertex at
a time from the built-in 7-vertex enumeration and deduplicated with
``copml.graph.certificate``.

    python tools/make_connected_g6.py 8 data/graph8c.g6
"""
import argparse
import sys
import time

from copml.graph import connected_classes, certificate, encode_graph6, extend_by_vertex

KNOWN_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def grow(bases, n):
    seen = {}
    for i, base in enumerate(bases):
        for attach in range(1, 1 << (n - 1)):
            h = extend_by_vertex(base, attach)
            seen.setdefault(certificate(h), h)
        if i % 100 == 0:
            print(f"  base {i}/{len(bases)}: {len(seen)} classes", file=sys.stderr)
    return [seen[k] for k in sorted(seen)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("n", type=int)
    ap.add_argument("out")
    args = ap.parse_args()
    if args.n <= 7:
        graphs = connected_classes(args.n)
    else:
        graphs = connected_classes(7)
        for n in range(8, args.n + 1):
            t = time.time()
            graphs = grow(graphs, n)
            print(f"n={n}: {len(graphs)} classes in {time.time() - t:.0f}s", file=sys.stderr)
    expected = KNOWN_COUNTS.get(args.n)
    if expected is not None and len(graphs) != expected:
        sys.exit(f"class count {len(graphs)} != known count {expected}")
    with open(args.out, "w") as fh:
        for g in graphs:
            fh.write(encode_graph6(g) + "\n")
    print(f"wrote {len(graphs)} graphs to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
