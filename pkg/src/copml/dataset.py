"""On-disk dataset of graphs, cop-number labels and feature vectors.

A store is a directory holding ``graphs.csv`` (id, g6, n, m, cop_number,
source_tag), ``features.csv`` (id plus one column per schema feature) and,
once a split has been drawn, ``manifest.json``. Missing values are empty CSV
fields. Floats are written with ``repr`` so a reload is exact.
"""
from __future__ import annotations

import csv
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np

from .copwin import cop_number
from .graph import Graph, Graph6ParseError, decode_graph6, read_graph6_lines
from .invariants import FEATURE_NAMES, FeatureVector, extract_features

log = logging.getLogger(__name__)

GRAPHS_FILE = "graphs.csv"
FEATURES_FILE = "features.csv"
MANIFEST_FILE = "manifest.json"
GRAPH_COLUMNS = ("id", "g6", "n", "m", "cop_number", "source_tag")
INVALID = "invalid"
LABELS = (1, 2, 3)


class DatasetError(Exception):
    pass


class IngestError(DatasetError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class DatasetRecord:
    id: int
    g6: str
    n: int
    m: int
    cop_number: Optional[int] = None
    source_tag: str = ""
    features: Optional[FeatureVector] = None
    invalid: bool = False

    def graph(self) -> Graph:
        return decode_graph6(self.g6)


@dataclass(frozen=True)
class DegreeFilter:
    """Keep graphs with ``min_degree <= delta(G)`` and ``Delta(G) <= max_degree``."""

    min_degree: Optional[int] = None
    max_degree: Optional[int] = None
    n: Optional[int] = None

    def __call__(self, g: Graph) -> bool:
        deg = g.degrees()
        if self.n is not None and g.n != self.n:
            return False
        if self.min_degree is not None and min(deg) < self.min_degree:
            return False
        if self.max_degree is not None and max(deg) > self.max_degree:
            return False
        return True


@dataclass
class IngestReport:
    ingested: int = 0
    duplicates: int = 0
    disconnected: int = 0
    filtered: int = 0

    def as_dict(self) -> dict:
        return dict(vars(self))


@dataclass
class SplitManifest:
    seed: int
    test_fraction: float
    train_ids: list[int]
    test_ids: list[int]
    strata_counts: dict[int, tuple[int, int]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "test_fraction": self.test_fraction,
            "train_ids": self.train_ids,
            "test_ids": self.test_ids,
            "strata_counts": {str(k): list(v) for k, v in sorted(self.strata_counts.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "SplitManifest":
        return cls(
            seed=int(data["seed"]),
            test_fraction=float(data["test_fraction"]),
            train_ids=[int(i) for i in data["train_ids"]],
            test_ids=[int(i) for i in data["test_ids"]],
            strata_counts={int(k): (int(v[0]), int(v[1])) for k, v in data["strata_counts"].items()},
        )


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


class DatasetStore:
    """In-memory view of a store directory; call ``save`` to persist changes."""

    def __init__(self, path, records: Iterable[DatasetRecord] = (), manifest: Optional[SplitManifest] = None):
        self.path = Path(path)
        self.records: dict[int, DatasetRecord] = {r.id: r for r in records}
        self.manifest = manifest

    # -- persistence ---------------------------------------------------------

    @classmethod
    def create(cls, path) -> "DatasetStore":
        store = cls(path)
        store.path.mkdir(parents=True, exist_ok=True)
        store.save()
        return store

    @classmethod
    def open(cls, path, create: bool = False) -> "DatasetStore":
        path = Path(path)
        if not (path / GRAPHS_FILE).exists():
            if create:
                return cls.create(path)
            raise DatasetError(f"no dataset store at {path}")
        records: dict[int, DatasetRecord] = {}
        with open(path / GRAPHS_FILE, newline="") as fh:
            for row in csv.DictReader(fh):
                label = row["cop_number"]
                rec = DatasetRecord(
                    id=int(row["id"]),
                    g6=row["g6"],
                    n=int(row["n"]),
                    m=int(row["m"]),
                    cop_number=int(label) if label not in ("", INVALID) else None,
                    source_tag=row["source_tag"],
                    invalid=label == INVALID,
                )
                records[rec.id] = rec
        feature_path = path / FEATURES_FILE
        if feature_path.exists():
            with open(feature_path, newline="") as fh:
                reader = csv.reader(fh)
                header = next(reader, None)
                if header is not None and tuple(header[1:]) != FEATURE_NAMES:
                    raise DatasetError(f"{feature_path} does not match feature schema")
                for row in reader:
                    values = {k: (float(v) if v != "" else None) for k, v in zip(FEATURE_NAMES, row[1:])}
                    records[int(row[0])].features = FeatureVector(values)
        manifest = None
        if (path / MANIFEST_FILE).exists():
            manifest = SplitManifest.from_json(json.loads((path / MANIFEST_FILE).read_text()))
        return cls(path, records.values(), manifest)

    def save(self) -> None:
        self.path.mkdir(parents=True, exist_ok=True)
        ordered = [self.records[i] for i in sorted(self.records)]
        with open(self.path / GRAPHS_FILE, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(GRAPH_COLUMNS)
            for r in ordered:
                label = INVALID if r.invalid else ("" if r.cop_number is None else str(r.cop_number))
                w.writerow([r.id, r.g6, r.n, r.m, label, r.source_tag])
        with open(self.path / FEATURES_FILE, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("id",) + FEATURE_NAMES)
            for r in ordered:
                if r.features is not None:
                    w.writerow([r.id] + [_fmt(v) for v in r.features.as_list()])
        self.save_manifest()

    def save_manifest(self) -> None:
        if self.manifest is not None:
            self.path.mkdir(parents=True, exist_ok=True)
            (self.path / MANIFEST_FILE).write_text(json.dumps(self.manifest.to_json(), indent=1) + "\n")

    # -- queries -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return (self.records[i] for i in sorted(self.records))

    def next_id(self) -> int:
        return max(self.records, default=-1) + 1

    def label_counts(self) -> dict[int, dict[int, int]]:
        """``{n: {label: count}}`` over labeled records."""
        out: dict[int, dict[int, int]] = {}
        for r in self:
            if r.cop_number is not None:
                row = out.setdefault(r.n, {c: 0 for c in LABELS})
                row[r.cop_number] = row.get(r.cop_number, 0) + 1
        return dict(sorted(out.items()))

    def feature_matrix(self, ids: Iterable[int]) -> tuple[np.ndarray, np.ndarray]:
        """Features (NaN for missing) and labels for ``ids``, in the given order."""
        ids = list(ids)
        X = np.full((len(ids), len(FEATURE_NAMES)), np.nan)
        y = np.zeros(len(ids), dtype=np.int64)
        for row, i in enumerate(ids):
            r = self.records[i]
            if r.features is None:
                raise DatasetError(f"record {i} has no features")
            if r.cop_number is None:
                raise DatasetError(f"record {i} has no label")
            X[row] = [np.nan if v is None else v for v in r.features.as_list()]
            y[row] = r.cop_number
        return X, y


# -- pipeline operations -------------------------------------------------------


def ingest_graph6(store: DatasetStore, path, source_tag: str,
                  keep: Optional[Callable[[Graph], bool]] = None) -> IngestReport:
    """Append connected graphs from a graph6 file; the whole batch fails on any parse error."""
    parsed: list[tuple[str, Graph]] = []
    with open(path) as fh:
        for lineno, text in read_graph6_lines(fh):
            try:
                parsed.append((text, decode_graph6(text)))
            except Graph6ParseError as exc:
                raise IngestError(str(exc), lineno) from exc
    report = IngestReport()
    seen: set[str] = set()
    next_id = store.next_id()
    for text, g in parsed:
        if text in seen:
            report.duplicates += 1
            continue
        seen.add(text)
        if not g.is_connected():
            report.disconnected += 1
            continue
        if keep is not None and not keep(g):
            report.filtered += 1
            continue
        store.records[next_id] = DatasetRecord(next_id, text, g.n, g.m, source_tag=source_tag)
        next_id += 1
        report.ingested += 1
    if report.disconnected:
        log.warning("skipped %d disconnected graphs from %s", report.disconnected, path)
    return report


def _label_one(g6: str) -> Optional[int]:
    try:
        return cop_number(decode_graph6(g6))
    except ValueError:
        return None


def _features_one(args: tuple[str, int]) -> Optional[dict]:
    g6, seed = args
    try:
        return extract_features(decode_graph6(g6), seed).values
    except ValueError:
        return None


def _map(fn, items: list, workers: int):
    # results come back in input order, so the single writer below is deterministic
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (workers * 8))))


def default_workers() -> int:
    return os.cpu_count() or 1


def label_all(store: DatasetStore, workers: int = 1) -> int:
    """Compute cop numbers for unlabeled records; returns how many were labeled."""
    todo = [r for r in store if r.cop_number is None and not r.invalid]
    labeled = 0
    for rec, label in zip(todo, _map(_label_one, [r.g6 for r in todo], workers)):
        if label is None:
            log.warning("record %d rejected by the solver; flagged invalid", rec.id)
            rec.invalid = True
        else:
            rec.cop_number = label
            labeled += 1
    return labeled


def featurize_all(store: DatasetStore, seed: int = 0, workers: int = 1) -> int:
    """Attach feature vectors (seeded with ``seed ^ id``) to records lacking them."""
    todo = [r for r in store if r.features is None and not r.invalid]
    done = 0
    for rec, values in zip(todo, _map(_features_one, [(r.g6, seed ^ r.id) for r in todo], workers)):
        if values is None:
            rec.invalid = True
            continue
        rec.features = FeatureVector(values)
        done += 1
    return done


def stratified_split(store: DatasetStore, test_fraction: float = 0.2, seed: int = 0) -> SplitManifest:
    """Per-class seeded shuffle with ``round(test_fraction * class size)`` rows held out."""
    if not 0.0 < test_fraction < 1.0:
        raise DatasetError(f"test fraction must lie in (0, 1), got {test_fraction}")
    by_class: dict[int, list[int]] = {}
    for r in store:
        if r.invalid:
            continue
        if r.cop_number is None:
            raise DatasetError(f"record {r.id} is unlabeled; run labeling first")
        by_class.setdefault(r.cop_number, []).append(r.id)
    rng = np.random.default_rng(seed)
    train: list[int] = []
    test: list[int] = []
    strata: dict[int, tuple[int, int]] = {}
    for label in sorted(by_class):
        ids = np.array(sorted(by_class[label]))
        if len(ids) < 2:
            log.warning("class %d has %d member(s); keeping it entirely in train", label, len(ids))
            n_test = 0
        else:
            n_test = int(math.floor(test_fraction * len(ids) + 0.5))
        ids = ids[rng.permutation(len(ids))]
        test.extend(int(i) for i in ids[:n_test])
        train.extend(int(i) for i in ids[n_test:])
        strata[label] = (len(ids) - n_test, n_test)
    manifest = SplitManifest(seed, test_fraction, sorted(train), sorted(test), strata)
    store.manifest = manifest
    store.save_manifest()
    return manifest
