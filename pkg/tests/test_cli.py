import io as pyio
import json
import sys

import pytest

from planet.cli import main


def run(argv, stdin=None, monkeypatch=None, capsys=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", pyio.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cli(monkeypatch, capsys):
    def _run(argv, stdin=None):
        return run(argv, stdin, monkeypatch, capsys)

    return _run


def test_euler_infeasible(cli):
    code, out, _ = cli(["euler", "-k", "5", "-m", "5"])
    assert code == 1 and json.loads(out)["verdict"] == "infeasible"
    code, out, _ = cli(["euler", "-k", "5", "-m", "6"])
    assert code == 0


def test_construct_pipe_group(cli):
    code, net, _ = cli(["construct", "pencil", "-m", "4"])
    assert code == 0
    code, out, _ = cli(["group", "-"], stdin=net)
    assert code == 0 and json.loads(out)["invariant_factors"] == [4]


def test_construct_verify_round_trip_exact(cli, tmp_path):
    code, net, _ = cli(["construct", "hessian", "--field", "cyclotomic:3"])
    path = tmp_path / "h.json"
    path.write_text(net)
    code, out, _ = cli(["verify", str(path)])
    rep = json.loads(out)
    assert code == 0 and rep["k"] == 4 and rep["m"] == 3 and rep["n_points"] == 9


def test_algebraize_torus(cli, tmp_path):
    out_path = tmp_path / "t.json"
    assert cli(["construct", "torus", "--invariants", "2,4", "-o", str(out_path)])[0] == 0
    code, out, _ = cli(["algebraize", str(out_path)])
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "yes" and rep["class"]["tag"] == "smooth" and rep["regular"]


def test_torus_three_factors_rejected(cli):
    code, out, _ = cli(["construct", "torus", "--invariants", "2,2,2"])
    assert code == 1 and "at most two invariant factors" in json.loads(out)["error"]


def test_resonance_braid(cli):
    _, net, _ = cli(["construct", "braid"])
    code, out, _ = cli(["resonance", "-"], stdin=net)
    rep = json.loads(out)
    assert code == 0 and rep["dimV"] == 2 and rep["h1"] == 1
    assert set(rep) >= {"J", "Q", "blocks", "dimV", "h1"}


def test_resonance_with_vector(cli, tmp_path):
    _, net, _ = cli(["construct", "braid"])
    (tmp_path / "n.json").write_text(net)
    (tmp_path / "v.json").write_text("[3, -1, 4, 1, -5, 9]")
    code, out, _ = cli(["resonance", str(tmp_path / "n.json"), "--vector", str(tmp_path / "v.json")])
    assert code == 0 and json.loads(out)["h1"] == 0


def test_malformed_json_exit_2(cli):
    code, _, err = cli(["verify", "-"], stdin="{oops")
    assert code == 2 and "-:1:2" in err
    code, _, err = cli(["verify", "-"], stdin='{"field": "complex", "classes": [[[1, 2]]]}')
    assert code == 2 and "$.classes[0][0]" in err


def test_usage_errors_exit_2(cli, tmp_path):
    assert cli(["construct"])[0] == 2
    assert cli(["frobnicate"])[0] == 2
    assert cli(["verify", str(tmp_path / "missing.json")])[0] == 2
    assert cli(["construct", "pencil", "-m", "3", "--field", "cyclotomic:4"])[0] == 2


def test_verify_negative_verdict(cli):
    bad = {"field": "complex", "classes": [[[1, 0, 0], [0, 1, 0]], [[0, 0, 1], [1, 1, 1]], [[1, 2, 3], [3, 1, 2]]]}
    code, out, _ = cli(["verify", "-"], stdin=json.dumps(bad))
    assert code == 1 and not json.loads(out)["ok"]


def test_latin_shuffle_and_text_mode(cli):
    _, net, _ = cli(["construct", "pencil", "-m", "3"])
    code, out, _ = cli(["latin", "-", "--shuffle", "5"], stdin=net)
    assert code == 0 and json.loads(out)["m"] == 3
    code, out, _ = cli(["group", "-", "--format", "text"], stdin=net)
    assert code == 0 and "invariant_factors: [3]" in out


def test_seed_and_environment(cli, monkeypatch):
    _, net, _ = cli(["construct", "braid"])
    a = json.loads(cli(["resonance", "-", "--seed", "11"], stdin=net)[1])["vector"]
    monkeypatch.setenv("PLANET_SEED", "11")
    b = json.loads(cli(["resonance", "-"], stdin=net)[1])["vector"]
    assert a == b
    monkeypatch.setenv("PLANET_SEED", "eleven")
    assert cli(["resonance", "-"], stdin=net)[0] == 2


def test_selftest(cli):
    code, out, _ = cli(["selftest", "--trials", "10"])
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and len(rep["suites"]) == 4


def test_singular_construct(cli):
    code, out, _ = cli(["construct", "singular", "--case", "2a", "-m", "3"])
    assert code == 0 and len(json.loads(out)["classes"]) == 3
    code, out, _ = cli(["construct", "singular", "--case", "1b", "-m", "3"])
    assert code == 1
