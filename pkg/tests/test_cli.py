import csv
import io
import json

import pytest

from dksrank.cli import main


@pytest.fixture
def star_file(tmp_path):
    p = tmp_path / "star.txt"
    p.write_text("# star S4\nc l1\nc l2\nc l3\nc l4\n")
    return p


@pytest.fixture
def triangle_file(tmp_path):
    p = tmp_path / "triangle.txt"
    p.write_text("a b\nb c\nc a\n")
    return p


def _rows(text):
    return list(csv.reader(io.StringIO("\n".join(l for l in text.splitlines() if not l.startswith("#")))))


def test_stats_json(triangle_file, capsys):
    assert main(["stats", "--dataset", str(triangle_file), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert (doc["n"], doc["m"]) == (3, 3)
    assert doc["beta_th"] == pytest.approx(1.0)


def test_stats_csv(star_file, capsys):
    assert main(["stats", "--dataset", str(star_file)]) == 0
    rows = _rows(capsys.readouterr().out)
    assert float(rows[1][rows[0].index("beta_th")]) == pytest.approx(2 / 3)


def test_rank_dc_triangle(triangle_file, capsys):
    assert main(["rank", "--dataset", str(triangle_file), "--methods", "DC"]) == 0
    rows = _rows(capsys.readouterr().out)[1:]
    assert [float(r[2]) for r in rows] == [2.0, 2.0, 2.0]


def test_rank_dks_star(star_file, capsys):
    assert main(["rank", "--dataset", str(star_file), "--methods", "DKS", "--radius", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# params=")
    scores = {r[0]: float(r[2]) for r in _rows(out)[1:]}
    assert scores == {"c": 40.0, "l1": 16.0, "l2": 16.0, "l3": 16.0, "l4": 16.0}


def test_rank_all_row_count(star_file, capsys):
    assert main(["rank", "--dataset", str(star_file), "--methods", "all"]) == 0
    assert len(_rows(capsys.readouterr().out)) == 1 + 7 * 5


def test_unknown_method_fails(star_file, capsys):
    assert main(["rank", "--dataset", str(star_file), "--methods", "closeness"]) != 0
    assert "unknown method" in capsys.readouterr().err


def test_missing_file_fails(tmp_path, capsys):
    assert main(["stats", "--dataset", str(tmp_path / "none.txt")]) != 0


def test_parse_error_fails(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("a b c\n")
    assert main(["stats", "--dataset", str(p)]) != 0
    assert "line 1" in capsys.readouterr().err


def test_sir(star_file, capsys):
    assert main(["sir", "--dataset", str(star_file), "--beta", "0,1", "--runs", "3"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["node_label", "beta", "ability", "runs"]
    by_beta = {}
    for lab, beta, ab, runs in rows[1:]:
        by_beta.setdefault(float(beta), []).append(float(ab))
    assert by_beta[0.0] == [0.2] * 5 and by_beta[1.0] == [1.0] * 5


def test_evaluate_and_determinism(star_file, tmp_path):
    args = ["evaluate", "--dataset", str(star_file), "--methods", "DC,KS,DKS",
            "--beta", "0.3,0.5", "--runs", "50", "--seed", "7"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b"), "--jobs", "2"]) == 0
    for name in ("report.json", "tau.csv", "monotonicity.csv", "scatter.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_evaluate_sweep_stdout(star_file, capsys):
    assert main(["evaluate", "--dataset", str(star_file), "--methods", "DC",
                 "--beta-sweep", "0.2:0.4:0.1", "--runs", "5", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["betas"] == [0.2, 0.3, 0.4]


def test_correlate(star_file, capsys):
    assert main(["correlate", "--dataset", str(star_file), "--x", "DKS", "--y", "LGM",
                 "--beta", "0.3", "--runs", "5"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["node_label", "score_DKS", "score_LGM", "sir_ability"]
    assert len(rows) == 6


def test_time_synthetic(capsys):
    assert main(["time", "--synthetic", "500", "--methods", "DC,DKS", "--repeats", "1"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 1 + 3 * 2


def test_manifest_name(tmp_path, star_file, capsys):
    m = tmp_path / "manifest.txt"
    m.write_text(f"s {star_file.name} 1\n")
    assert main(["rank", "--dataset", "s", "--manifest", str(m), "--methods", "DKS"]) == 0
    scores = [float(r[2]) for r in _rows(capsys.readouterr().out)[1:]]
    assert scores == [40.0, 10.0, 10.0, 10.0, 10.0]
