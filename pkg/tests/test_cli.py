import io
import json
import subprocess
import sys

import pytest

from affinecodes import cli


def _run(argv):
    out = io.StringIO()
    code = cli.run(argv, stdout=out)
    text = out.getvalue()
    return code, text


def _json(argv):
    code, text = _run(argv)
    return code, json.loads(text)


def test_code_info_example():
    code, rep = _json(["code", "info", "--p", "2", "--m", "3", "--r", "1", "--D", "0,1,2,4"])
    assert code == 0
    assert rep["schema_version"] == 1 and rep["command"] == "code info"
    r = rep["results"]
    assert (r["a"], r["b"], r["dim"], r["paut_order"], r["trivial"]) == (1, 1, 4, 1344, False)


def test_code_info_verify():
    code, rep = _json(["code", "info", "--p", "2", "--m", "2", "--r", "2", "--D", "0,1", "--verify"])
    assert code == 0
    assert rep["results"]["verify"]["scan_order"] == 12


def test_code_list_example_and_parity_warning():
    code, rep = _json(["code", "list", "--p", "2", "--m", "2", "--r", "2"])
    assert code == 0
    assert rep["results"]["count"] == 5 and rep["results"]["nontrivial"] == 2
    assert [w["tag"] for w in rep["warnings"]] == ["Length4Parity"]
    _, odd = _json(["code", "list", "--p", "2", "--m", "2", "--r", "3"])
    assert odd["results"]["nontrivial"] == 0 and odd["warnings"]
    _, other = _json(["code", "list", "--p", "2", "--m", "3", "--r", "1", "--params"])
    assert other["warnings"] == []
    assert [c["paut_order"] for c in other["results"]["codes"]] == [None, 1344, None, None]


def test_witness_example():
    code, rep = _json(["structures", "witness", "--p", "2", "--m", "3", "--r", "1", "--D", "0,1,2,4"])
    assert code == 0
    r = rep["results"]
    assert r["nonabelian_exists"] and r["structure"] == "(F2×F2)⋊F2" and r["order"] == 8
    _, none = _json(["structures", "witness", "--p", "2", "--m", "2", "--r", "2", "--D", "0,1"])
    assert none["results"]["nonabelian_exists"] is False


def test_chi_f_explicit_matrices():
    chi = "0,0,0,1;0,0,0,0;0,0,0,0;0,0,0,0"
    f = "0,0,0,0;0,0,0,1;0,0,0,0;0,0,0,0"
    code, rep = _json(["structures", "chi-f", "--p", "2", "--m", "4", "--a", "1", "--chi", chi, "--f", f])
    assert code == 0
    r = rep["results"]
    assert r["abelian"] and r["case"] == "b" and r["structure"] == "C2×C2×C4"
    assert r["decomposition"]["dims"] == {"Z": 2, "V": 1, "W": 0, "Wp": 1, "U": 0}


def test_chi_f_auto_trace():
    code, rep = _json(["structures", "chi-f", "--p", "2", "--m", "4", "--auto", "trace", "--c", "0,1", "--kind", "f1"])
    assert code == 0
    assert rep["results"]["abelian"] is False and rep["results"]["case"] == "c"


def test_chi_f_violation_exits_2(capsys):
    chi = "0,0,0,1;0,0,0,0;0,0,0,0;0,0,0,0"
    f = "0,0,0,0;0,0,0,0;0,0,0,0;0,0,0,1"
    code, rep = _json(["structures", "chi-f", "--p", "2", "--m", "4", "--chi", chi, "--f", f])
    assert code == 2
    assert rep["error"]["tag"] == "CondViolation"
    assert "error [CondViolation]" in capsys.readouterr().err


def test_invalid_defining_set_exits_2():
    code, rep = _json(["code", "info", "--p", "2", "--m", "3", "--r", "1", "--D", "0,3"])
    assert code == 2 and rep["error"]["tag"] == "InvalidDefiningSet"


def test_missing_flag_is_usage_error():
    with pytest.raises(SystemExit) as err:
        cli.run(["code", "info", "--p", "2", "--m", "3", "--r", "1"])
    assert err.value.code == 2


def test_small_budget_exits_3():
    code, rep = _json(["oracle", "groups", "--p", "2", "--m", "3", "--r", "1", "--D", "0,1,2,4", "--budget", "20"])
    assert code == 3
    assert rep["results"]["complete"] is False
    assert rep["warnings"][0]["tag"] == "BudgetExceeded"


def test_oracle_groups_and_verify():
    code, rep = _json(["oracle", "groups", "--p", "2", "--m", "2", "--r", "2", "--D", "0,2"])
    assert code == 0
    assert [(g["type"], g["count"]) for g in rep["results"]["left"]] == [("C2xC2", 1)]
    assert rep["results"]["twosided"] == rep["results"]["left"]
    code, rep = _json(["oracle", "verify", "--p", "3", "--m", "2", "--r", "1", "--D", "0,1,3"])
    assert code == 0 and rep["results"]["scan_equals_enumeration"]


def test_verify_mismatch_exits_4(monkeypatch):
    monkeypatch.setattr(cli, "verify_code", lambda C, budget: {"paut_order": 1344, "enumerated": 1343})
    code, rep = _json(["code", "info", "--p", "2", "--m", "3", "--r", "1", "--D", "0,1,2,4", "--verify"])
    assert code == 4 and rep["error"]["tag"] == "VerifyMismatch"


def test_byte_identical_output():
    argv = ["structures", "chi-f", "--p", "2", "--m", "4", "--auto", "trace", "--kind", "f1"]
    assert _run(argv)[1] == _run(argv)[1]
    argv = ["oracle", "groups", "--p", "2", "--m", "3", "--r", "1", "--D", "0,1,2,4"]
    assert _run(argv)[1] == _run(argv)[1]


def test_timing_only_on_request():
    _, rep = _json(["code", "info", "--p", "2", "--m", "3", "--r", "1", "--D", "0,1,2,4"])
    assert "timing" not in rep
    _, rep = _json(["code", "info", "--p", "2", "--m", "3", "--r", "1", "--D", "0,1,2,4", "--timing"])
    assert rep["timing"]["seconds"] >= 0


def test_human_output_and_out_file(tmp_path):
    code, text = _run(["code", "info", "--p", "2", "--m", "3", "--r", "1", "--D", "0,1,2,4", "--human"])
    assert code == 0 and "paut_order: 1344" in text
    out = tmp_path / "rep.json"
    code, text = _run(["code", "list", "--p", "2", "--m", "3", "--r", "1", "--out", str(out)])
    assert code == 0 and text == ""
    assert json.loads(out.read_text())["results"]["count"] == 4


def test_descriptor_files(tmp_path):
    field = tmp_path / "field.txt"
    field.write_text("p=2 m=4 modulus=1,1,0,0,1\n")
    codef = tmp_path / "code.json"
    codef.write_text('{"p":2,"m":3,"r":1,"D":[0,1,2,4]}')
    pair = tmp_path / "pair.json"
    pair.write_text(json.dumps({"a": 1, "chi": [[0, 0, 0, 1], [0] * 4, [0] * 4, [0] * 4],
                                "f": [[0] * 4, [0, 0, 0, 1], [0] * 4, [0] * 4]}))
    code, rep = _json(["code", "info", "--code-file", str(codef)])
    assert code == 0 and rep["results"]["paut_order"] == 1344
    code, rep = _json(["code", "list", "--field-file", str(field), "--r", "1"])
    assert code == 0 and rep["inputs"]["m"] == 4
    code, rep = _json(["structures", "chi-f", "--field-file", str(field), "--chi-f-file", str(pair)])
    assert code == 0 and rep["results"]["structure"] == "C2×C2×C4"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "affinecodes", "code", "info", "--p", "2", "--m", "3", "--r", "1",
                           "--D", "0,1,2,4"], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["results"]["paut_order"] == 1344
