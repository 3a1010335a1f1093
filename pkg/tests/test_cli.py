import json

import pytest

from invprob.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gamma_prints_bare_value(capsys):
    code, out, _ = run(capsys, "gamma", "--A", "finite:[5]", "--B", "finite:[5,9]")
    assert code == 0 and out.strip() == "1/2"


def test_skew_with_union_literal(capsys):
    code, out, _ = run(capsys, "skew", "--A", "Lm:0", "--B", "Lm:0 | sparse:double-exp")
    assert code == 0 and out.strip() == "0"


def test_undetermined_and_strict(capsys):
    args = ["skew", "--A", "sparse:double-exp", "--B", "Rn:1"]
    code, out, _ = run(capsys, *args)
    assert code == 0 and out.startswith("undetermined")
    code, _, _ = run(capsys, *args, "--strict")
    assert code == 1


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--point", "0", "--gen", '{"translate": "1"}',
                       "--space", '{"kind": "integers"}', "--budget", "20")
    assert code == 0 and "budget exceeded" in out
    code, out, _ = run(capsys, "orbit", "--point", '{"bits": []}', "--gen", '{"reverse": [0, 1]}', "--format", "json")
    d = json.loads(out)
    assert d["result"] == "finite" and len(d["closure"]) == 2


def test_equidecomp(capsys):
    code, out, _ = run(capsys, "equidecomp", "--A", "[0, 1]", "--B", "[1, 2]", "--gen", '{"translate": "1"}')
    assert code == 0 and "result: yes" in out


def test_popper_build_then_verify(capsys, tmp_path):
    table = tmp_path / "t.json"
    base = ["--points", "[0, 1, 2, 3]", "--gen", '{"cycle": [1, 2]}']
    code, _, _ = run(capsys, "popper", "build", *base, "--first-target", "[0]", "--format", "json", "--out", str(table))
    assert code == 0
    code, out, _ = run(capsys, "popper", "verify", "--table", str(table), "--gen", '{"cycle": [1, 2]}')
    assert code == 0 and "[PASS]" in out and "[FAIL]" not in out
    d = json.loads(table.read_text())
    raw = tmp_path / "raw.json"
    # a corrupted table fails
    d["table"]["entries"]["1,15"] = "1/2"
    raw.write_text(json.dumps(d["table"]))
    code, out, _ = run(capsys, "popper", "verify", "--table", str(raw))
    assert code == 1 and "[FAIL]" in out


def test_qual(capsys):
    code, out, _ = run(capsys, "qual", "compare", "--A", "Lm:0", "--B", "Rn:0")
    assert code == 0 and out.strip() == "less"
    code, out, _ = run(capsys, "qual", "compare", "--oracle", "lexmax", "--A", "finite:[2]", "--B", "finite:[1]")
    assert out.strip() == "greater"
    code, out, _ = run(capsys, "qual", "verify", "--family", "finite:[]", "finite:[0]", "Lm:0", "Rn:0",
                       "--gen", '{"translate": "1"}')
    # the regular cone order cannot be strongly invariant; that is reported without failing
    assert code == 0 and "[PASS] weak invariance" in out and "(informational) [FAIL] strong invariance" in out


def test_usage_errors(capsys):
    code, _, err = run(capsys, "gamma", "--A", "nonsense", "--B", "finite:[1]")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "orbit", "--point", "{", "--gen", '{"translate": "1"}')
    assert code == 2
    code, _, _ = run(capsys, "popper", "verify")
    assert code == 2
    # a rational step cannot act on an integer point
    code, _, err = run(capsys, "orbit", "--point", "0", "--gen", '{"translate": "1/2"}')
    assert code == 2 and "error" in err
    with pytest.raises(SystemExit) as e:
        main(["gamma", "--A", "finite:[1]", "--B", "finite:[1]", "--bogus"])
    assert e.value.code == 2
    with pytest.raises(SystemExit):
        main([])


def test_scenario_run(capsys):
    from importlib import resources

    path = resources.files("invprob") / "data" / "scenarios" / "cone-skew.json"
    code, out, _ = run(capsys, "scenario", "run", str(path), "--seed", "3")
    assert code == 0 and "all expectations met" in out and "(seed 3)" in out


def test_localfinite(capsys):
    code, out, _ = run(capsys, "localfinite", "--points", '[{"bits": [0]}, {"bits": [2, 5]}]',
                       "--gen", '{"reverse": [0]}', "--gen", '{"reverse": [3]}')
    assert code == 0 and "result: all_finite" in out
