import csv
import io
import json
import subprocess
import sys

import pytest

from bocce.cli import main


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_exact():
    assert run(["exact", "--n", "8", "--d", "2"]) == (0, "1/16 = 0.0625\n")


def test_regions():
    assert run(["regions", "--n", "4", "--d", "3"]) == (0, "14\n")


def test_table1():
    code, text = run(["table1"])
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 13
    assert rows[5]["p(n,3)"] == "0.500"
    assert rows[4]["p(n,3)"] == "0.688" and ".686" in rows[4]["note"]
    assert all(r["note"] == "" for i, r in enumerate(rows) if i != 4)


def test_figure2():
    code, text = run(["figure2"])
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0 and len(rows) == 102
    assert rows[51] == ["50", "0.5", "1/2"]


def test_figure3(tmp_path):
    svg = tmp_path / "fig.svg"
    code, text = run(["figure3", "--svg", str(svg)])
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0 and len(rows) == 13
    assert rows[1] == ["1", "2", "0.25", "1/4"]
    assert svg.read_text().startswith("<svg")


def test_simulate_json_and_env_seed(monkeypatch):
    argv = ["simulate", "--scenario", "bocce", "--n", "8", "--d", "2", "--trials", "400"]
    monkeypatch.setenv("BOCCE_SEED", "12")
    code, text = run(argv)
    report = json.loads(text)
    assert code == 0 and report["seed"] == 12 and report["exact"] == "1/16"
    assert run(argv + ["--seed", "12"])[1] == text
    assert json.loads(run(argv + ["--seed", "13"])[1])["seed"] == 13


def test_simulate_csv():
    code, text = run(["simulate", "--scenario", "game", "--m", "1", "--n", "3", "--trials", "50",
                      "--seed", "1", "--csv", "--dist", "cube:2"])
    header, row = text.strip().split("\n")
    assert code == 0 and header.startswith("scenario,dims") and row.startswith("game,m=1;n=3,50")


def test_game(tmp_path):
    path = tmp_path / "g.csv"
    path.write_text("2,-1\n-1,1\n")
    code, text = run(["game", "--matrix", str(path)])
    assert code == 0
    assert "value: 1/5" in text and "row strategy: 2/5 3/5" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["--bogus"],
        [],
        ["exact", "--n", "x", "--d", "2"],
        ["simulate", "--scenario", "bocce", "--n", "3", "--trials", "5"],
        ["simulate", "--scenario", "nope", "--trials", "5"],
        ["simulate", "--scenario", "bocce", "--n", "3", "--d", "2", "--trials", "5", "--dist", "gauss"],
        ["game", "--matrix", "/nonexistent.csv"],
        ["figure3", "--m-min", "5", "--m-max", "2"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, text = run(argv)
    assert code == 2 and text == ""
    assert "usage" in capsys.readouterr().err


def test_verify_quick_passes():
    code, text = run(["verify"])
    assert code == 0, text
    assert "11/11 checks passed" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bocce", "exact", "--n", "3", "--d", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "3/4 = 0.75\n"
