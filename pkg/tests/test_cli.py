import io
import json

import pandas as pd
import pytest

from src.cli import run
from src.config import COLLAB_FIXTURE_PATH, HUB_FIXTURE_PATH


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_exponents_all_modes(capsys):
    assert run(["exponents", "--motif", "bowtie", "--tau", "5/2"]) == 0
    payload = _json(capsys)
    assert payload["motif"] == "bowtie"
    assert set(payload["modes"]) == set(payload["at_tau"])
    assert len(payload["modes"]) == 4
    assert payload["config"]["flags"]["tau"] == "5/2"


def test_exponents_single_mode_from_literal(capsys):
    assert run(["exponents", "--motif", "0-1,1-2,2-0", "--mode", "free"]) == 0
    payload = _json(capsys)
    assert payload["motif"] == "triangle"
    (mode,) = payload["modes"].values()
    assert mode["pieces"][0]["exponent"]["a"] == "9/2"


def test_classify_motif(capsys):
    assert run(["classify", "--motif", "triangle", "--tau", "11/5"]) == 0
    payload = _json(capsys)
    assert payload["self_averaging"] == [["2", "5/2"]]


def test_count_census_csv(capsys):
    assert run(["count", "--graph", str(COLLAB_FIXTURE_PATH), "--induced"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    counts = dict(zip(frame["motif"], frame["count"]))
    assert counts["claw"] == 1140 and counts["paw"] == 60


def test_count_single_motif_and_orbits(capsys, tmp_path):
    assert run(["count", "--graph", str(HUB_FIXTURE_PATH), "--motif", "claw"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert frame["count"].tolist() == [320]
    out = tmp_path / "orbits.csv"
    assert run(["count", "--graph", str(HUB_FIXTURE_PATH), "--orbits", "--out", str(out)]) == 0
    orbits = pd.read_csv(out)
    assert orbits.columns[0] == "vertex" and len(orbits) == 61


def test_sample_exports_files(capsys, tmp_path):
    target = tmp_path / "g"
    assert run(["sample", "--tau", "5/2", "--n", "300", "--seed", "4", "--out", str(target)]) == 0
    payload = _json(capsys)
    assert (target / "edges.txt").exists() and (target / "metadata.json").exists()
    assert payload["meta"]["mu_source"] == "analytic"
    assert payload["n"] == 300


def test_data_report_to_file(tmp_path):
    out = tmp_path / "report.json"
    assert run(["data-report", "--graph", str(COLLAB_FIXTURE_PATH), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["name"] == "collab_cliques"
    assert report["ordering"]["matches"] is False


def test_catalog_lists_atlas(capsys):
    assert run(["catalog"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert frame["atlas"].sum() == 29


@pytest.mark.parametrize("argv", [
    ["exponents"],
    ["exponents", "--motif", "triangle", "--tau", "3"],
    ["exponents", "--motif", "hexagon"],
    ["classify", "--motif", "0-1,2-3"],
    ["sample", "--n", "10"],
    ["scale", "--motif", "triangle", "--tau", "5/2", "--samples", "5"],
    ["no-such-command"],
])
def test_usage_errors_exit_with_two(argv):
    assert run(argv) == 2


def test_missing_graph_exits_with_one(tmp_path):
    assert run(["count", "--graph", str(tmp_path / "missing.txt")]) == 1
