"""Command-line pipeline: gen -> ingest -> solve -> featurize -> split -> train -> eval/importance.

Every subcommand prints one JSON document (or CSV for ``importance``) on
stdout; logs go to stderr. Exit codes: 0 success, 2 usage or configuration
error, 3 data error.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__
from .dataset import (
    MANIFEST_FILE,
    DatasetError,
    DatasetStore,
    DegreeFilter,
    IngestError,
    default_workers,
    featurize_all,
    ingest_graph6,
    label_all,
    stratified_split,
)
from .graph import MAX_ENUMERATION_VERTICES, connected_classes, encode_graph6
from .invariants import FEATURE_NAMES
from .learn import MODEL_TYPES, ModelFileError, Pipeline, evaluate, fit_pipeline, permutation_importance

EXIT_USAGE = 2
EXIT_DATA = 3

log = logging.getLogger("copml")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _metadata(args, timestamp: bool = True) -> dict:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func",) and v is not None}
    flags = {k: (str(v) if isinstance(v, Path) else v) for k, v in flags.items()}
    meta = {"tool": "copml", "version": __version__, "seed": getattr(args, "seed", None), "flags": flags}
    if timestamp:
        meta["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return meta


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=1) + "\n")


def _open_store(args, create: bool = False) -> DatasetStore:
    if args.store is None:
        raise CliError("no store given (use --store or set COPML_STORE)", EXIT_USAGE)
    try:
        return DatasetStore.open(args.store, create=create)
    except DatasetError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc


def _counts_json(store: DatasetStore) -> dict:
    per_n = {str(n): {str(c): k for c, k in row.items()} for n, row in store.label_counts().items()}
    totals = {"1": 0, "2": 0, "3": 0}
    for row in per_n.values():
        for c, k in row.items():
            totals[c] = totals.get(c, 0) + k
    return {"per_n": per_n, "totals": totals}


# -- subcommands -----------------------------------------------------------------


def cmd_gen(args) -> None:
    if not 2 <= args.max_n <= MAX_ENUMERATION_VERTICES:
        raise CliError(f"--max-n must lie in 2..{MAX_ENUMERATION_VERTICES}", EXIT_USAGE)
    counts = {}
    lines = []
    for n in range(2, args.max_n + 1):
        graphs = connected_classes(n)
        counts[str(n)] = len(graphs)
        lines.extend(encode_graph6(g) for g in graphs)
    Path(args.out).write_text("".join(line + "\n" for line in lines))
    _emit({"metadata": _metadata(args), "counts": counts, "total": len(lines), "out": str(args.out)})


def cmd_ingest(args) -> None:
    store = _open_store(args, create=True)
    keep = DegreeFilter(args.min_deg, args.max_deg)
    try:
        report = ingest_graph6(store, args.g6, args.tag, keep)
    except IngestError as exc:
        raise CliError(f"{args.g6}: {exc}", EXIT_DATA) from exc
    except OSError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    store.save()
    skipped = report.duplicates + report.disconnected + report.filtered
    _emit({"metadata": _metadata(args), **report.as_dict(), "skipped": skipped})


def cmd_solve(args) -> None:
    store = _open_store(args)
    labeled = label_all(store, args.workers)
    store.save()
    _emit({"metadata": _metadata(args), "labeled": labeled, **_counts_json(store)})


def cmd_featurize(args) -> None:
    store = _open_store(args)
    done = featurize_all(store, args.seed, args.workers)
    store.save()
    _emit({"metadata": _metadata(args), "featurized": done, "schema_size": len(FEATURE_NAMES)})


def cmd_split(args) -> None:
    store = _open_store(args)
    try:
        manifest = stratified_split(store, args.test_frac, args.seed)
    except DatasetError as exc:
        raise CliError(str(exc), EXIT_DATA) from exc
    digest = hashlib.sha256((store.path / MANIFEST_FILE).read_bytes()).hexdigest()
    _emit({
        "metadata": _metadata(args),
        "train": len(manifest.train_ids),
        "test": len(manifest.test_ids),
        "strata_counts": {str(k): list(v) for k, v in sorted(manifest.strata_counts.items())},
        "manifest_sha256": digest,
    })


def _split_rows(store: DatasetStore, which: str):
    if store.manifest is None:
        raise CliError("store has no split manifest; run `split` first", EXIT_DATA)
    ids = store.manifest.train_ids if which == "train" else store.manifest.test_ids
    try:
        return store.feature_matrix(ids)
    except DatasetError as exc:
        raise CliError(str(exc), EXIT_DATA) from exc


def _load_model(path) -> Pipeline:
    try:
        return Pipeline.load(path)
    except ModelFileError as exc:
        raise CliError(str(exc), EXIT_DATA) from exc


def cmd_train(args) -> None:
    store = _open_store(args)
    X, y = _split_rows(store, "train")
    pipe = fit_pipeline(args.model, X, y, FEATURE_NAMES, seed=args.seed)
    meta = {"tool": "copml", "version": __version__, "seed": args.seed, "model": args.model,
            "train_rows": int(len(y))}
    pipe.save(args.out, meta)
    _emit({"metadata": _metadata(args), "model": args.model, "train_rows": int(len(y)), "out": str(args.out)})


def cmd_eval(args) -> None:
    pipe = _load_model(args.model)
    store = _open_store(args)
    X, y = _split_rows(store, "test")
    report = evaluate(pipe, X, y).to_json()
    if args.out:
        doc = {"metadata": {"tool": "copml", "version": __version__, "kind": pipe.kind,
                            "seed": pipe.params.get("seed")}, **report}
        Path(args.out).write_text(json.dumps(doc, indent=1) + "\n")
    _emit({"metadata": _metadata(args), "kind": pipe.kind, **report})


def cmd_importance(args) -> None:
    pipe = _load_model(args.model)
    store = _open_store(args)
    X, y = _split_rows(store, "test")
    ranking = permutation_importance(pipe, X, y, repeats=args.repeats, seed=args.seed,
                                     feature_names=pipe.feature_names)
    buf = io.StringIO()
    meta = _metadata(args)
    buf.write(f"# copml {meta['version']} seed={args.seed} repeats={args.repeats} "
              f"kind={pipe.kind} timestamp={meta['timestamp']}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["feature", "importance"])
    for name, value in ranking:
        w.writerow([name, repr(value)])
    sys.stdout.write(buf.getvalue())


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="copml", description="Cop numbers of small graphs and models that predict them.")
    p.add_argument("--version", action="version", version=f"copml {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)
    env_store = os.environ.get("COPML_STORE")

    def store_arg(sp):
        sp.add_argument("--store", default=env_store, help="store directory (default: $COPML_STORE)")

    def workers_arg(sp):
        sp.add_argument("--workers", type=int, default=default_workers())

    def seed_arg(sp):
        sp.add_argument("--seed", type=int, default=42)

    sp = sub.add_parser("gen", help="write all connected graphs with 2..N vertices as graph6")
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("ingest", help="append connected graphs from a graph6 file")
    sp.add_argument("--g6", required=True)
    store_arg(sp)
    sp.add_argument("--tag", default="")
    sp.add_argument("--min-deg", type=int)
    sp.add_argument("--max-deg", type=int)
    sp.set_defaults(func=cmd_ingest)

    sp = sub.add_parser("solve", help="compute cop numbers for unlabeled graphs")
    store_arg(sp)
    workers_arg(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("featurize", help="compute feature vectors for graphs lacking them")
    store_arg(sp)
    seed_arg(sp)
    workers_arg(sp)
    sp.set_defaults(func=cmd_featurize)

    sp = sub.add_parser("split", help="draw a stratified train/test split")
    store_arg(sp)
    sp.add_argument("--test-frac", type=float, default=0.2)
    seed_arg(sp)
    sp.set_defaults(func=cmd_split)

    sp = sub.add_parser("train", help="fit a model on the training split")
    store_arg(sp)
    sp.add_argument("--model", required=True, choices=sorted(MODEL_TYPES))
    seed_arg(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_train)

    sp = sub.add_parser("eval", help="score a model on the test split")
    sp.add_argument("--model", required=True)
    store_arg(sp)
    sp.add_argument("--out", help="also write the report (without timestamp) to this file")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("importance", help="permutation importance on the test split (CSV)")
    sp.add_argument("--model", required=True)
    store_arg(sp)
    sp.add_argument("--repeats", type=int, default=10)
    seed_arg(sp)
    sp.set_defaults(func=cmd_importance)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except CliError as exc:
        log.error("%s", exc)
        return exc.code
    return 0


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
