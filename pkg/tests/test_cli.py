import json
import subprocess
import sys

import pytest

from htk.builtins import GALOIS_BUILTINS
from htk.cli import main
from htk.serialize import dump_document, to_json
from htk.builtins import load_builtin


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list_builtins(capsys):
    code, out, _ = run(capsys, "list-builtins")
    assert code == 0
    for name in GALOIS_BUILTINS:
        assert name in out
    code, out, _ = run(capsys, "list-builtins", "klein", "--json")
    names = [b["name"] for b in json.loads(out)]
    assert names and all("klein" in n for n in names)


@pytest.mark.parametrize("name", ["c2", "sweedler_h4", "trivial_c2", "dual_klein"])
def test_check_builtin(capsys, name):
    code, out, _ = run(capsys, "check", "--builtin", name)
    assert code == 0 and "PASSED" in out


def test_check_json_shape(capsys):
    code, out, _ = run(capsys, "check", "--builtin", "twisted_klein", "--json")
    rd = json.loads(out)
    assert code == 0 and rd["passed"] and rd["command"] == "check"
    assert set(rd) >= {"tool", "version", "input", "object", "field", "summary", "verdicts"}
    assert rd["summary"]["failed"] == 0 and rd["summary"]["total"] == len(rd["verdicts"])
    assert len(rd["input"]["sha256"]) == 64


def test_not_galois_exits_one(capsys):
    code, out, _ = run(capsys, "derive-torsor", "--builtin", "trivial_coaction_c2")
    assert code == 1 and "FAIL" in out and "galois.coinvariants_scalar" in out
    code, _, _ = run(capsys, "verify-paper", "--builtin", "trivial_coaction_c2")
    assert code == 1


def test_derive_torsor_writes_document(capsys, tmp_path):
    out_file = tmp_path / "tor.json"
    code, out, _ = run(capsys, "derive-torsor", "--builtin", "sweedler_regular", "--out", str(out_file))
    assert code == 0 and "(11)" in out
    code, out, _ = run(capsys, "check", str(out_file))
    assert code == 0 and "torsor.matches_galois_theta" in out
    code, out, _ = run(capsys, "check", str(out_file), "--object", "T")
    assert code == 0 and "galois.stored_gamma" in out
    code, out, _ = run(capsys, "verify-paper", str(out_file), "--json")
    assert code == 0 and json.loads(out)["passed"]


def test_derive_torsor_json_embeds_document(capsys):
    code, out, _ = run(capsys, "derive-torsor", "--builtin", "trivial_c2", "--json")
    rd = json.loads(out)
    assert code == 0 and rd["document"]["default"] == "T_torsor"


def test_corrupted_stored_gamma(capsys, tmp_path):
    out_file = tmp_path / "tor.json"
    run(capsys, "derive-torsor", "--builtin", "trivial_c2", "--out", str(out_file))
    data = json.loads(out_file.read_text())
    data["objects"]["T"]["gamma"][0][-2] = 2
    out_file.write_text(json.dumps(data))
    code, out, _ = run(capsys, "check", str(out_file), "--object", "T")
    assert code == 1 and "galois.stored_gamma" in out and "witness" in out


def test_export_roundtrip(capsys, tmp_path):
    p = tmp_path / "h.json"
    assert run(capsys, "export", "--builtin", "taft3_f7_hopf", "--out", str(p))[0] == 0
    code, out, _ = run(capsys, "check", str(p), "--json")
    assert code == 0 and json.loads(out)["field"] == "F7"


def test_verify_paper_on_hopf_object(capsys):
    code, out, _ = run(capsys, "verify-paper", "--builtin", "c2")
    assert code == 0 and "(15)" in out


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "check", "--builtin", "twisted_klien")
    assert code == 2 and "twisted_klein" in err
    code, _, err = run(capsys, "check", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err
    code, _, err = run(capsys, "check")
    assert code == 2
    p = tmp_path / "x.json"
    p.write_text("{")
    code, _, err = run(capsys, "check", str(p), "--builtin", "c2")
    assert code == 2 and "either" in err
    code, _, err = run(capsys, "check", str(p))
    assert code == 2 and "line 1 column 2" in err and err.count("line 1") == 1
    code, _, err = run(capsys, "check", "--builtin", "trivial_c2", "--object", "TT")
    assert code == 2 and "'T'" in err
    code, _, err = run(capsys, "derive-torsor", "--builtin", "c2")
    assert code == 2 and "not a comodule algebra" in err
    assert run(capsys, "frobnicate")[0] == 2


def test_format_error_has_location(capsys, tmp_path):
    data = dump_document(load_builtin("c2"))
    data["objects"]["H"]["mult"][2][0] = 7
    p = tmp_path / "bad.json"
    p.write_text(to_json(data))
    code, _, err = run(capsys, "check", str(p))
    assert code == 2 and "objects.H.mult[2]" in err


def test_no_antipode_input(capsys, tmp_path):
    data = dump_document(load_builtin("c2"))
    del data["objects"]["H"]["antipode"]
    # t * t = t instead of g * g = 1
    data["objects"]["H"]["mult"] = [[0, 0, 0, 1, 1], [0, 1, 1, 1, 1], [1, 0, 1, 1, 1], [1, 1, 1, 1, 1]]
    p = tmp_path / "monoid.json"
    p.write_text(to_json(data))
    code, out, _ = run(capsys, "check", str(p))
    assert code == 1 and "antipode.exists" in out


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "htk", "--version"], capture_output=True, text=True, check=True
    )
    assert out.stdout.startswith("htk ")
