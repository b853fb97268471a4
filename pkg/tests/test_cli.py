import io
import json
import subprocess
import sys

from conftest import FIXTURES
from homcolor import cli
from homcolor.documents import read_json


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run("--report", "json", *argv)
    return code, json.loads(text)


def fx(name):
    return str(FIXTURES / name)


def test_exit_codes():
    assert run("verify", fx("f1.json"))[0] == 0
    assert run("verify", fx("f1-alpha-id.json"))[0] == 1
    assert run("verify", fx("no-such-file.json"))[0] == 2


def test_bad_documents_exit_2(tmp_path):
    doc = read_json(FIXTURES / "f1.json")
    doc["brackets"].append({"args": [2, 1, 3], "value": [{"basis": 2, "coeff": "1"}]})
    p = tmp_path / "conflict.json"
    p.write_text(json.dumps(doc))
    code, text = run("verify", str(p))
    assert code == 2 and "conflicting" in text

    doc = read_json(FIXTURES / "f1.json")
    doc["group"] = {"free_rank": 0, "torsion": [3]}
    p = tmp_path / "torsion.json"
    p.write_text(json.dumps(doc))
    assert run("verify", str(p))[0] == 2

    p = tmp_path / "garbage.json"
    p.write_text("{not json")
    assert run("verify", str(p))[0] == 2


def test_text_report_mentions_witness():
    code, text = run("verify", fx("f1-alpha-id.json"))
    assert code == 1 and "e1" in text and "-e2" in text


def test_flags_after_subcommand():
    code, rep = run("verify", fx("f1.json"), "--report", "json")
    assert code == 0
    assert json.loads(rep)["verified"] is True


def test_construct_reduce_and_save(tmp_path):
    out = tmp_path / "red.json"
    code, rep = run_json("construct", "reduce", fx("f2-base.json"), "--xi", "e1", "--out", str(out))
    assert code == 0
    assert read_json(out)["arity"] == 3
    code, rep = run_json("construct", "reduce", fx("f1.json"), "--xi", "e2")
    assert code == 2


def test_construct_twist_and_tensor():
    code, rep = run_json("construct", "twist", fx("f2-base.json"), "--map", fx("swap12.json"))
    assert rep["morphism"]["ok"] is False and "note" in rep
    code, rep = run_json("construct", "tensor", fx("dual-numbers.json"), fx("f1.json"))
    assert code == 0 and rep["dim"] == 8


def test_compute_commands():
    code, rep = run_json("compute", "derived", fx("f1.json"))
    assert code == 0 and rep["dims"] == [4, 2, 0]
    code, rep = run_json("compute", "center", fx("zero2.json"))
    assert code == 0 and rep["dim"] == 2
    code, rep = run_json("compute", "deralg", fx("zero2.json"))
    assert code == 0 and rep["dim"] == 4


def test_check_commands():
    assert run("check", "semimorphism", fx("f1.json"), fx("id4.json"))[0] == 0
    assert run("check", "module", fx("f1.json"), "self")[0] == 0
    assert run("check", "morphism", fx("f2-base.json"), fx("swap12.json"))[0] == 1


def test_console_script_module_entry():
    res = subprocess.run([sys.executable, "-m", "homcolor.cli", "verify", fx("f1.json")],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
