import json

import pytest

from mouldkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pal_text_and_json(capsys, tmp_path):
    code, out, _ = run(capsys, "pal", "--depth", "2")
    assert code == 0 and "r=1" in out
    code, out, _ = run(capsys, "--format", "json", "pal", "--depth", "2")
    doc = json.loads(out)
    assert doc["kind"] == "mould" and doc["depth"] == 2
    path = tmp_path / "pal.json"
    code, out, _ = run(capsys, "pal", "--depth", "2", "--out", str(path), "--format", "json")
    assert code == 0 and json.loads(path.read_text())["kind"] == "mould"


def test_dupal(capsys):
    code, out, _ = run(capsys, "dupal", "--depth", "2")
    assert code == 0 and "-1/2" in out


def test_solve_gamma_check(capsys, tmp_path):
    basis = tmp_path / "f3.json"
    rec = tmp_path / "rec.json"
    code, out, _ = run(capsys, "solve-ds", "--weight", "3", "--out", str(basis))
    assert code == 0
    assert json.loads(basis.read_text())["kind"] == "ds-basis"
    code, out, _ = run(capsys, "gamma-s", "--in", str(basis), "--depth", "3", "--out", str(rec))
    assert code == 0
    code, out, _ = run(capsys, "check", "--property", "push", "--in", str(rec))
    assert code == 0 and "push" in out
    code, out, _ = run(capsys, "check", "--property", "alternal", "--in", str(rec),
                       "--format", "json")
    assert code == 0 and json.loads(out)
    code, _, _ = run(capsys, "check", "--property", "bialternal", "--mould", "A", "--in", str(rec))
    assert code == 0
    code, _, _ = run(capsys, "check", "--property", "dsell", "--in", str(rec))
    assert code == 0
    code, _, _ = run(capsys, "check", "--property", "ds", "--in", str(basis))
    assert code == 0


def test_solve_ds_empty_weight(capsys):
    code, out, _ = run(capsys, "solve-ds", "--weight", "4")
    assert code == 0 and "dimension 0" in out


def test_check_failure_exit(capsys, tmp_path):
    path = tmp_path / "c3.json"
    path.write_text(json.dumps({"kind": "cpoly", "version": 1, "terms": [[[3], "1"]]}))
    code, _, err = run(capsys, "gamma-s", "--in", str(path), "--depth", "3")
    assert code == 1 and "certification failed" in err


def test_bad_document(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "mould", "version": 7}')
    code, _, err = run(capsys, "check", "--property", "push", "--in", str(path))
    assert code == 2 and "version" in err
    code, _, err = run(capsys, "check", "--property", "push", "--in", str(tmp_path / "none"))
    assert code == 2


def test_bad_arguments(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nope"])
    assert info.value.code == 2
    code, _, _ = run(capsys, "solve-ds", "--weight", "2")
    assert code == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "pal", "--depth", "3", "--weight", "7")
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "--format", "json", "verify", "--suite", "deltastar",
                       "--depth", "3", "--weight", "7")
    doc = json.loads(out)
    assert code == 0 and all(v["holds"] for v in doc["verdicts"])
