import json

import pytest

from nchs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gram_prints_exact(capsys, tmp_path):
    code, out, _ = run(capsys, "gram", "--n", "2", "--d", "1")
    assert code == 0 and "1/2" in out
    target = tmp_path / "g.json"
    code, out, _ = run(capsys, "gram", "--n", "2", "--d", "2", "--out", str(target))
    doc = json.loads(target.read_text())
    assert doc["rows"][0] == ["1", "1/4", "1/4", "1/6"]
    code, out, _ = run(capsys, "gram", "--n", "2", "--d", "1", "--which", "m")
    assert code == 0


def test_cap_enforced(capsys):
    code, _, err = run(capsys, "--cap", "10", "gram", "--n", "2", "--d", "4")
    assert code == 2 and "error" in err


def test_bad_arguments_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gram", "--n", "x", "--d", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["sohs", "--n", "2", "--d", "2", "--mu", "0.4"])
    assert exc.value.code == 2


def test_sohs_and_verify(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "sohs", "--n", "2", "--d", "2", "--out", str(path))
    assert code == 0 and "terms: 3" in out
    assert run(capsys, "verify", str(path))[0] == 0

    code, out, _ = run(capsys, "sohs", "--n", "2", "--d", "2", "--mu", "5/12")
    assert code == 0 and "verified" in out

    code, out, _ = run(capsys, "sohs", "--n", "2", "--d", "2", "--mu", "1/2")
    assert code == 1 and "witness" in out


def test_verify_tampered_and_malformed(capsys, tmp_path, data_dir):
    text = (data_dir / "g2_d2.json").read_text()
    bad = tmp_path / "bad.json"
    bad.write_text(text.replace('"weight": "5/9"', '"weight": "5/8"'))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1 and "residual" in out
    bad.write_text(text.replace('"weight": "5/9"', '"weight": "-5/9"'))
    assert run(capsys, "verify", str(bad))[0] == 1
    bad.write_text(text[:40])
    assert run(capsys, "verify", str(bad))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_verify_fixtures(capsys, data_dir, d):
    assert run(capsys, "verify", str(data_dir / f"g2_d{d}.json"))[0] == 0


def test_mu(capsys):
    code, out, _ = run(capsys, "mu", "--n", "2", "--d", "2")
    assert code == 0 and "5/12 ~ 0.41666" in out and "K            = 7" in out
    code, out, _ = run(capsys, "mu", "--n", "2", "--d", "3", "--json")
    assert json.loads(out)["mu"] == "7/20"
    code, out, _ = run(capsys, "mu", "--n", "1", "--d", "5", "--json")
    assert json.loads(out)["mu"] == "1"


def test_counterexamples(capsys):
    code, out, _ = run(capsys, "counterexamples", "--which", "noschur")
    assert code == 0 and "indefinite" in out and "1/6" in out
    code, out, _ = run(capsys, "counterexamples", "--which", "nobound", "--n", "2", "--d", "3")
    assert code == 0 and "f in ker G, f not in ker B" in out
    code, out, _ = run(capsys, "counterexamples", "--which", "nobound", "--n", "1", "--d", "3")
    assert code == 2
    code, out, _ = run(capsys, "counterexamples", "--which", "exa22", "--t", "0.1")
    assert code == 0 and len(out.strip().splitlines()) == 2
    assert run(capsys, "counterexamples", "--which", "exa22", "--t", "0.001")[0] == 2


def test_cp(capsys):
    code, out, _ = run(capsys, "cp", "--n", "2", "--d", "2", "--show-matrix")
    assert code == 0 and "3 rows" in out
    code, out, _ = run(capsys, "cp", "--n", "1", "--d", "3")
    assert code == 0 and "1 rows" in out


def test_eval(capsys, tmp_path):
    out_json = tmp_path / "e.json"
    code, out, _ = run(capsys, "--samples", "5", "eval", "--n", "2", "--d", "2", "--json-out", str(out_json))
    assert code == 0 and "5/5" in out
    rows = json.loads(out_json.read_text())["rows"]
    assert [r["seed"] for r in rows] == list(range(5))
    code, out, _ = run(capsys, "--samples", "3", "eval", "--n", "2", "--d", "1", "--k", "2", "--mu", "1")
    assert code == 1


def test_verify_mu_fixture(capsys, data_dir):
    code, out, _ = run(capsys, "verify", str(data_dir / "g22_mu.json"))
    assert code == 0 and "2 terms" in out
