import csv
import io
import json
import subprocess
import sys

import pytest

from copml.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


@pytest.fixture
def small_store(tmp_path, capsys):
    g6 = tmp_path / "g.g6"
    store = tmp_path / "store"
    run_json(capsys, "gen", "--max-n", 6, "--out", g6)
    run_json(capsys, "ingest", "--g6", g6, "--store", store, "--tag", "enum")
    run_json(capsys, "solve", "--store", store, "--workers", 1)
    run_json(capsys, "featurize", "--store", store, "--workers", 1)
    run_json(capsys, "split", "--store", store, "--seed", 42)
    return store


def test_gen_counts(tmp_path, capsys):
    out = tmp_path / "g4.g6"
    doc = run_json(capsys, "gen", "--max-n", 4, "--out", out)
    lines = out.read_text().splitlines()
    # one line per connected class: 1 (n=2) + 2 (n=3) + 6 (n=4)
    assert len(lines) == doc["total"] == 9
    assert doc["counts"] == {"2": 1, "3": 2, "4": 6}
    assert doc["metadata"]["tool"] == "copml" and "timestamp" in doc["metadata"]


def test_gen_k2_and_range(tmp_path, capsys):
    out = tmp_path / "g2.g6"
    run_json(capsys, "gen", "--max-n", 2, "--out", out)
    assert out.read_text() == "A_\n"
    code, text = run(capsys, "gen", "--max-n", 9, "--out", tmp_path / "x")
    assert code == 2 and text == ""
    assert not (tmp_path / "x").exists()


def test_ingest_reports_and_filters(tmp_path, capsys):
    g6 = tmp_path / "g.g6"
    run_json(capsys, "gen", "--max-n", 7, "--out", g6)
    doc = run_json(capsys, "ingest", "--g6", g6, "--store", tmp_path / "s", "--max-deg", 2)
    # paths and cycles on 2..7 vertices: P2, P3, C3, and P_n, C_n for n = 4..7
    assert doc["ingested"] == 11
    assert doc["skipped"] == doc["filtered"] == 995 - 11
    assert doc["metadata"]["flags"]["max_deg"] == 2


def test_ingest_parse_error_exit_3(tmp_path, capsys, caplog):
    bad = tmp_path / "bad.g6"
    bad.write_text("A_\nC!\n")
    code, out = run(capsys, "ingest", "--g6", bad, "--store", tmp_path / "s")
    assert code == 3 and out == ""
    assert "line 2" in caplog.text


def test_missing_store_exit_2(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("COPML_STORE", raising=False)
    assert run(capsys, "solve", "--store", tmp_path / "nope")[0] == 2
    assert run(capsys, "solve")[0] == 2


def test_store_from_environment(tmp_path, capsys, monkeypatch):
    g6 = tmp_path / "g.g6"
    run_json(capsys, "gen", "--max-n", 3, "--out", g6)
    monkeypatch.setenv("COPML_STORE", str(tmp_path / "envstore"))
    doc = run_json(capsys, "ingest", "--g6", g6)
    assert doc["ingested"] == 3 and (tmp_path / "envstore" / "graphs.csv").exists()


def test_pipeline_commands(small_store, tmp_path, capsys):
    solve = run_json(capsys, "solve", "--store", small_store, "--workers", 1)
    assert solve["labeled"] == 0
    assert solve["per_n"]["6"] == {"1": 68, "2": 44, "3": 0}
    assert solve["per_n"]["4"] == {"1": 5, "2": 1, "3": 0}
    assert run_json(capsys, "featurize", "--store", small_store)["featurized"] == 0

    a = run_json(capsys, "split", "--store", small_store, "--test-frac", 0.2, "--seed", 42)
    b = run_json(capsys, "split", "--store", small_store, "--test-frac", 0.2, "--seed", 42)
    assert a["manifest_sha256"] == b["manifest_sha256"]
    assert a["metadata"]["seed"] == 42

    model = tmp_path / "m.json"
    run_json(capsys, "train", "--store", small_store, "--model", "dtree", "--out", model)
    report = run_json(capsys, "eval", "--model", model, "--store", small_store)
    assert {"accuracy", "macro_f1", "confusion"} <= set(report)
    assert sum(map(sum, report["confusion"])) == a["test"]


def test_train_errors(small_store, tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        main(["train", "--store", str(small_store), "--model", "svm", "--out", str(tmp_path / "m")])
    assert info.value.code == 2
    assert run(capsys, "eval", "--model", tmp_path / "missing.json", "--store", small_store)[0] == 3
    junk = tmp_path / "junk.json"
    junk.write_text('{"format": "other"}')
    assert run(capsys, "eval", "--model", junk, "--store", small_store)[0] == 3


def test_importance_csv_is_deterministic(small_store, tmp_path, capsys):
    model = tmp_path / "m.json"
    run_json(capsys, "train", "--store", small_store, "--model", "logreg", "--out", model)
    outputs = []
    for _ in range(2):
        code, text = run(capsys, "importance", "--model", model, "--store", small_store,
                         "--repeats", 1, "--seed", 7)
        assert code == 0
        meta, body = text.split("\n", 1)
        assert meta.startswith("# copml") and "seed=7" in meta
        rows = list(csv.reader(io.StringIO(body)))
        assert rows[0] == ["feature", "importance"] and len(rows) == 39
        outputs.append(body)
    assert outputs[0] == outputs[1]


def test_module_entry_point_and_logs_on_stderr(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "copml", "gen", "--max-n", "3", "--out", str(tmp_path / "g")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["total"] == 3
    bad = subprocess.run([sys.executable, "-m", "copml", "gen", "--max-n", "1", "--out", str(tmp_path / "h")],
                         capture_output=True, text=True)
    assert bad.returncode == 2 and bad.stdout == "" and "max-n" in bad.stderr
