import json
import math

import pytest

from tyczlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_families_listing(capsys):
    code, out = run(capsys, "families")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "family,aliases,required,optional,description"
    assert len(lines) == 12  # header + 11 families
    assert any(line.startswith("case7,an0v") for line in lines)


def test_classify_text_and_json(capsys):
    code, out = run(capsys, "classify", "--A", "0", "--B", "-1")
    assert code == 0 and out.strip() == "simanca, lambda=1"
    code, out = run(capsys, "classify", "--A", "0.5", "--B", "-1.5",
                    "--format", "json")
    d = json.loads(out)
    assert d["family"] == "case7"
    assert d["params"] == {"lambda": 1.0, "mu": 2.0}
    assert "xi" in d["free"]


def test_tmg_csv_schema_and_values(capsys):
    code, out = run(capsys, "tmg", "--family", "simanca", "--lambda", "1",
                    "--m", "1..6", "--point", "r=1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "family,params,point,m,T"
    assert len(lines) == 7
    for row in lines[1:]:
        fam, params, point, m, T = row.split(",")
        assert fam == "simanca" and point == "r=1"
        assert float(T) == pytest.approx(int(m) ** 2, rel=1e-8)


def test_tmg_deterministic(capsys, tmp_path):
    args = ["tmg", "--family", "hyperbolic", "--mu", "2", "--n", "1",
            "--m", "2..6", "--point", "r=0.4"]
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(f1)]) == 0
    assert main(args + ["--out", str(f2)]) == 0
    capsys.readouterr()
    assert f1.read_bytes() == f2.read_bytes()


def test_fit_json(capsys):
    code, out = run(capsys, "fit", "--family", "hyperbolic", "--mu", "4",
                    "--n", "1", "--m", "1..10", "--point", "r=0.3",
                    "--basis", "1,0", "--format", "json")
    assert code == 0
    d = json.loads(out)
    coefs = dict(zip(d["fit"]["basis"], d["fit"]["coefficients"]))
    assert coefs["1"] if "1" in coefs else coefs[1] == pytest.approx(1.0, abs=1e-8)


def test_curvature_csv(capsys):
    code, out = run(capsys, "curvature", "--p", "2", "--point", "x1=0,x2=0")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("family,params,point,scal")
    cells = lines[1].split(",")
    assert float(cells[3]) == pytest.approx(-5.0)


def test_balanced_text(capsys):
    code, out = run(capsys, "balanced", "--family", "an0v", "--lambda", "2",
                    "--mu", "4", "--xi", "0.5", "--max-degree", "12")
    assert code == 0
    assert out.startswith("NotBalanced: missing monomial degree 2")


def test_inducible_json(capsys):
    code, out = run(capsys, "inducible", "--family", "an0vii",
                    "--zeta", "0.3333333333333333", "--mu", "3", "--h-max", "12")
    assert code == 0
    d = json.loads(out)
    assert d["scan"]["status"] == "obstructed"
    assert d["scan"]["witness"]["h"] == 3
    assert d["catalog_inducible"] is False


def test_szego_logterm(capsys):
    code, out = run(capsys, "szego", "--profile", "m^2 + 1/m", "--n", "2",
                    "--logterm")
    assert code == 0
    d = json.loads(out)
    assert d["logterm"]["b_estimate"] == pytest.approx(-1.0, abs=1e-3)


def test_szego_probe(capsys):
    code, out = run(capsys, "szego", "--probe", "2,1,0")
    assert code == 0
    d = json.loads(out)
    assert d["classification"] == "diverges_to_minus_infinity"


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "simanca", "lambda": 1.0,
                               "m": "1..4", "point": ["r=1"]}))
    code, out = run(capsys, "tmg", "--config", str(cfg))
    assert code == 0
    assert out.splitlines()[0] == "family,params,point,m,T"
    assert len(out.strip().splitlines()) == 5


def test_usage_error_exit_code(capsys):
    assert main(["nonsense"]) == 1
    capsys.readouterr()
    assert main(["classify"]) == 1          # missing required flags
    capsys.readouterr()


def test_compute_error_exit_code(capsys):
    assert main(["tmg", "--family", "nosuch", "--m", "1..3"]) == 2
    capsys.readouterr()
    # p-domain below the trivial-space threshold
    assert main(["tmg", "--p", "2", "--m", "1..1", "--point", "x1=0,x2=0"]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    for sub in ("tmg", "fit", "curvature", "inducible", "balanced", "szego"):
        assert main([sub, "--help"]) == 0
        out = capsys.readouterr().out
        assert "usage" in out
