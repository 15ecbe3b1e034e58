import json
import subprocess
import sys

import jsonschema
import pytest

from trihom import io as gio
from trihom import multigraph as mg
from trihom.cli import main
from trihom.errors import MalformedPairing

SCHEMA_DIR = None


def _schema(name):
    import importlib.resources as res

    with res.files("trihom.schemas").joinpath(name).open() as fh:
        return json.load(fh)


def test_graph_text_roundtrip(theta, dumbbell, k4):
    for g in (theta, dumbbell, k4):
        text = gio.to_graph_text(g)
        assert gio.from_graph_text(text) == g


def test_graph_text_comments_and_errors():
    g = gio.from_graph_text("# theta\nk 1\ne 0 3 # inline\ne 1 4\ne 2 5\n")
    assert g.num_vertices == 2
    with pytest.raises(MalformedPairing):
        gio.from_graph_text("e 0 3\n")  # no header
    with pytest.raises(MalformedPairing):
        gio.from_graph_text("k 1\nq 0 3\n")
    with pytest.raises(MalformedPairing):
        gio.from_graph_text("k 0\n")


def test_dot_and_jsonl(theta):
    dot = gio.to_dot(theta)
    assert "graph" in dot and dot.count("--") == 3
    rec = json.loads(gio.to_jsonl_record(theta))
    jsonschema.validate(rec, _schema("enumerate-record.schema.json"))


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "trihom.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc


def test_cli_enumerate_counts():
    out = run_cli("enumerate", "--k", "1", "--tadpoles", "exclude", "--format", "jsonl")
    assert out.returncode == 0
    assert len(out.stdout.strip().splitlines()) == 1
    out = run_cli("enumerate", "--k", "2", "--tadpoles", "exclude")
    assert len(out.stdout.strip().splitlines()) == 2


def test_cli_enumerate_bad_k():
    out = run_cli("enumerate", "--k", "0")
    assert out.returncode == 2


def test_cli_enumerate_formats(tmp_path):
    out = run_cli("enumerate", "--k", "1", "--format", "graph-text")
    assert out.stdout.startswith("k 1\n")
    out = run_cli("enumerate", "--k", "1", "--format", "dot")
    assert "graph G0" in out.stdout


def test_cli_dim_report_schema():
    out = run_cli("dim", "--k", "1", "--convention", "odd")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["dimension"] == 1
    jsonschema.validate(doc, _schema("report.schema.json"))
    out = run_cli("dim", "--k", "1", "--convention", "even")
    assert json.loads(out.stdout)["dimension"] == 0


def test_cli_dim_certify_schema():
    out = run_cli("dim", "--k", "2", "--convention", "even", "--certify")
    doc = json.loads(out.stdout)
    jsonschema.validate(doc, _schema("report.schema.json"))
    assert len(doc["certificates"]) == len(doc["classes"])
    kinds = {c.get("kind") or c["type"] for c in doc["certificates"]}
    assert kinds  # mixed zero witnesses and nonzero functionals


def test_cli_dim_oracle_check():
    out = run_cli("dim", "--k", "2", "--convention", "even", "--oracle-check")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["oracle_check"]["agrees"] is True
    out = run_cli("dim", "--k", "3", "--convention", "even", "--oracle-check")
    assert out.returncode == 2  # oracle capped at k <= 2


def test_cli_dump_matrix(tmp_path):
    path = tmp_path / "rel.mtx"
    out = run_cli(
        "dim", "--k", "2", "--convention", "odd", "--dump-matrix", str(path),
        "--json", str(tmp_path / "r.json"),
    )
    assert out.returncode == 0
    assert path.read_text().startswith("%%MatrixMarket")


def test_cli_plan(tmp_path, theta):
    gfile = tmp_path / "theta.g"
    gfile.write_text(gio.to_graph_text(theta))
    out = run_cli("plan", "--graph", str(gfile), "--ambient-dim", "4")
    assert out.returncode == 0
    assert "ambient dimension d=4" in out.stdout

    out = run_cli("plan", "--graph", str(gfile), "--ambient-dim", "3")
    assert out.returncode == 2

    out = run_cli(
        "plan", "--graph", str(gfile), "--ambient-dim", "5", "--format", "json"
    )
    doc = json.loads(out.stdout)
    jsonschema.validate(doc, _schema("plan.schema.json"))
    assert doc["family_dim"] == 2

    out = run_cli("plan", "--graph", str(tmp_path / "missing.g"), "--ambient-dim", "4")
    assert out.returncode == 2


def test_cli_plan_k4_json(tmp_path, k4):
    gfile = tmp_path / "k4.g"
    gfile.write_text(gio.to_graph_text(k4))
    out = run_cli(
        "plan", "--graph", str(gfile), "--ambient-dim", "5", "--format", "json"
    )
    doc = json.loads(out.stdout)
    assert doc["family_dim"] == 4


def test_cli_infeasible_exit_code(monkeypatch, tmp_path, theta):
    """No cubic graph is known to be infeasible; force the path."""
    from trihom import surgery
    from trihom.errors import Infeasible

    gfile = tmp_path / "theta.g"
    gfile.write_text(gio.to_graph_text(theta))

    def boom(g, d):
        raise Infeasible("forced", token="exhaustive-search:nodes=1")

    monkeypatch.setattr(surgery, "plan", boom)
    rc = main(["plan", "--graph", str(gfile), "--ambient-dim", "4"])
    assert rc == 3


def test_cli_resource_limit_exit_code(monkeypatch):
    monkeypatch.setenv("AK_MAX_CLASSES", "1")
    out = subprocess.run(
        [sys.executable, "-m", "trihom.cli", "enumerate", "--k", "2"],
        capture_output=True,
        text=True,
        env={"AK_MAX_CLASSES": "1", "PATH": "/usr/bin:/bin"},
    )
    assert out.returncode == 4


def test_cli_byte_determinism():
    a = run_cli("dim", "--k", "2", "--convention", "even", "--certify")
    b = run_cli("dim", "--k", "2", "--convention", "even", "--certify")
    assert a.stdout == b.stdout
    a = run_cli("enumerate", "--k", "3")
    b = run_cli("enumerate", "--k", "3")
    assert a.stdout == b.stdout
