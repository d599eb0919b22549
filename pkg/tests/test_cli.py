import csv
import io
import json
import subprocess
import sys

import pytest

from drinfeld import __version__
from drinfeld.cli import EXIT_CONFIG, EXIT_FALSIFIED, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_graph_dot_has_dashed_rays(capsys):
    code, out, _ = run(capsys, "graph", "--q", "2", "--I", "T^2+T", "--depth", "8", "--format", "dot")
    assert code == EXIT_OK
    assert out.startswith("digraph")
    rays = {line.split("->")[0].strip() for line in out.splitlines() if "dashed" in line}
    assert out.count("dashed") == 4 * (8 - 1)
    assert len(rays) >= 4


def test_graph_json_embeds_config(capsys):
    code, out, _ = run(capsys, "graph", "--I", "T")
    data = json.loads(out)
    assert data["version"] == __version__
    assert data["config"]["I"] == "T" and data["config"]["q"] == 2
    assert len(data["graph"]["cusps"]) == 2


def test_eisenstein_residual_column_is_zero(capsys):
    code, out, _ = run(capsys, "eisenstein", "--q", "2", "--I", "1", "--edges", "core", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and all(r["fe_residual"] == "0" for r in rows)
    assert all(r["fe_residual_plain_completion"] != "0" for r in rows)


def test_eisenstein_plain_completion_flags_failure(capsys):
    code, _, _ = run(capsys, "eisenstein", "--I", "1", "--completion", "plain")
    assert code == EXIT_FALSIFIED


def test_forms_markdown(capsys):
    code, out, _ = run(capsys, "forms", "--I", "T^3+T+1", "--format", "md")
    assert code == EXIT_OK
    assert "# Cusp forms of level T^3+T+1" in out and "| form |" in out


def test_hecke_commute(capsys):
    code, out, _ = run(capsys, "hecke", "--I", "T^3+T+1", "--P", "T", "--P", "T+1")
    assert code == EXIT_OK
    assert json.loads(out)["commute"]


def test_units(capsys):
    code, out, _ = run(capsys, "units", "--I", "T^2+T")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["decomposition"]["kappa"] == 3
    assert data["xi"]["total_divisor"] == {}


@pytest.mark.parametrize("argv", [
    ("graph", "--q", "6", "--I", "T"),
    ("graph", "--I", "T^2"),
    ("graph", "--I", "T+x"),
    ("units", "--I", "1"),
    ("lfun", "--I1", "T^3+T+1", "--I2", "T^3+T+1"),
    ("forms", "--I", "T", "--format", "dot"),
])
def test_config_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_CONFIG
    assert "config error" in err


def test_verify_reports_falsified_identity(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--I1", "T^3+T+1", "--I2", "T^3+T^2+1", "--out", str(out))
    assert code == EXIT_FALSIFIED
    data = json.loads(out.read_text())
    assert data["holds_with_constant_(q+1)/2"] is True
    assert data["pairs"][0]["lhs_over_rhs"] == "3/2"


def test_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("DRINFELD_CACHE_DIR", str(tmp_path))
    run(capsys, "eisenstein", "--I", "1")
    assert (tmp_path / "eisenstein.pkl").exists()
    code, _, _ = run(capsys, "eisenstein", "--I", "1")
    assert code == EXIT_OK


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "drinfeld", "graph", "--I", "T", "--format", "csv"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("edge,n,origin")
