import json

import pytest

from mubforge.cli import EXIT_INCONCLUSIVE, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def body(text):
    obj = json.loads(text)
    obj.pop("timestamp")
    return obj


def test_spreads_count(capsys):
    code, out, _ = run(capsys, "spreads", "2", "2", "--count-only")
    assert code == EXIT_OK and out.strip() == "6"


def test_spreads_json(capsys):
    code, out, _ = run(capsys, "spreads", "3", "1")
    obj = json.loads(out)
    assert code == 0 and obj["result"]["count"] == 1 and obj["exit_code"] == 0
    assert {"config", "timestamp", "result"} <= set(obj)


def test_deterministic_modulo_timestamp(capsys):
    a = run(capsys, "build-mub", "2", "2", "--spread", "3")[1]
    b = run(capsys, "build-mub", "2", "2", "--spread", "3")[1]
    assert body(a) == body(b)


@pytest.mark.parametrize("argv", [["spreads", "4", "1"], ["spreads", "2", "0"], ["build-mub", "2", "2", "--spread", "6"],
                                  ["sharp-search", "3", "2"], ["sharp-search", "2", "2", "--budget", "-1"],
                                  ["spreads", "2", "1", "--format", "xml"], ["frobnicate"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == EXIT_USAGE


def test_build_then_check(capsys, tmp_path):
    f = tmp_path / "mub.json"
    code, _, _ = run(capsys, "build-mub", "2", "2", "-o", str(f))
    assert code == 0
    code, out, _ = run(capsys, "check-mub", str(f))
    assert code == EXIT_OK and json.loads(out)["result"]["valid"]
    obj = json.loads(f.read_text())
    bases = obj["result"]["bases"]
    bases[2] = bases[1]
    f.write_text(json.dumps(obj))
    assert run(capsys, "check-mub", str(f))[0] == EXIT_MISMATCH
    f.write_text("{not json")
    assert run(capsys, "check-mub", str(f))[0] == EXIT_MISMATCH
    assert run(capsys, "check-mub", str(tmp_path / "missing.json"))[0] == EXIT_MISMATCH


@pytest.mark.parametrize("p,n,status", [(2, 1, "SHARPLY_COVARIANT"), (3, 1, "NOT_SHARPLY_COVARIANT"),
                                        (2, 2, "SHARPLY_COVARIANT")])
def test_sharp_search(capsys, p, n, status):
    code, out, _ = run(capsys, "sharp-search", str(p), str(n), "--antiunitary")
    assert code == EXIT_OK and json.loads(out)["result"]["status"] == status


def test_sharp_search_inconclusive(capsys):
    code, out, _ = run(capsys, "sharp-search", "2", "2", "--budget", "1e-12")
    assert code == EXIT_INCONCLUSIVE and json.loads(out)["result"]["status"] == "INCONCLUSIVE"


def test_sharp_search_d16(capsys):
    code, out, _ = run(capsys, "sharp-search", "2", "4")
    assert code == EXIT_OK and json.loads(out)["result"]["status"] == "NOT_SHARPLY_COVARIANT"


def test_zsigmondy(capsys):
    code, out, _ = run(capsys, "zsigmondy", "2", "6")
    r = json.loads(out)["result"]
    assert code == 0 and r["primes"] == [] and r["exceptional"]
    code, out, _ = run(capsys, "zsigmondy", "3", "8")
    assert json.loads(out)["result"]["primes"] == [41]


def test_singer_and_lemmas(capsys):
    code, out, _ = run(capsys, "singer", "2", "2")
    r = json.loads(out)["result"]
    assert code == 0 and r["order"] == 5 and r["normalizer_order"] == 20
    code, out, _ = run(capsys, "verify-lemmas", "3", "1", "--format", "csv")
    assert code == 0 and out.startswith("report,check,status,detail")
    assert "SKIP" in out  # 3^2 - 1 has no Zsigmondy prime


def test_symmetry_and_orbit(capsys):
    code, out, _ = run(capsys, "symmetry", "2", "2")
    r = json.loads(out)["result"]
    assert code == 0 and r["order"] == 1920 and r["basis_action_order"] == 120
    code, out, _ = run(capsys, "orbit", "2", "2", "--format", "md")
    assert code == 0 and out.startswith("# mubforge orbit")


def test_seed_is_recorded(capsys):
    out = run(capsys, "spreads", "2", "1", "--seed", "0x10")[1]
    assert json.loads(out)["config"]["seed"] == "0x10"


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("MUBFORGE_THREADS", "0")
    assert main(["spreads", "2", "1"]) == EXIT_USAGE
    monkeypatch.setenv("MUBFORGE_THREADS", "2")
    out = run(capsys, "spreads", "2", "1")[1]
    assert json.loads(out)["config"]["threads"] == 2


@pytest.mark.slow
def test_verify_theorems(capsys, tmp_path):
    f = tmp_path / "vt.md"
    code, out, _ = run(capsys, "verify-theorems", "-o", str(f))
    assert code == EXIT_OK
    text = f.read_text()
    assert "| FAIL |" not in text
    assert "exit code: 0" in text
