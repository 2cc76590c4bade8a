import io as _io
import json
from pathlib import Path

import pytest

from eohk import io
from eohk.cli import run
from eohk.signature import b_i, eq2, neq2, norm_square

EXAMPLES = Path(__file__).resolve().parent.parent / "examples"


def call(*argv):
    buf = _io.StringIO()
    code = run(list(argv), out=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text.strip() else None)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_classify_example_file():
    code, out = call("classify", str(EXAMPLES / "six_vertex_111.json"))
    assert code == 3
    assert out["diagnostic"]["reason"] == "support not affine"


def test_eval_example_file():
    code, out = call("eval", "--mode", "brute", str(EXAMPLES / "diseq4_loops_13_24.json"))
    assert code == 0 and out["value"] == "2"
    for mode in ("auto", "affine", "product"):
        assert call("eval", "--mode", mode, str(EXAMPLES / "diseq4_loops_13_24.json"))[1]["value"] == "2"


def test_verify_f8():
    code, out = call("verify-f8", "--json")
    assert code == 0 and out["ok"] and len(out["table"]) == 28


def test_signature_commands(tmp_path):
    bi = write(tmp_path, "bi.json", io.signature_to_json(b_i()))
    code, out = call("classify", bi)
    assert code == 0 and out["outcome"] == "TractableAffine"
    code, out = call("factor", bi, "--ars")
    assert code == 0 and out["factors"][0]["vars"] == [1, 2]
    code, out = call("transform-z", bi)
    assert code == 0 and all("i" not in v for v in out["values"])
    code, out = call("tilde", write(tmp_path, "u.json", {"arity": 1, "values": ["1", "2"]}))
    assert out["values"] == ["0", "1", "2", "0"]
    code, out = call("pin", bi, "2", "1")
    assert out["values"] == ["i", "0"]
    neq4 = write(tmp_path, "n4.json", {"arity": 4, "values": ["1" if x in (3, 12) else "0" for x in range(16)]})
    assert call("merge", neq4, "1", "3")[1]["values"] == ["0", "1", "1", "0"]
    code, out = call("mate", neq4, "1", "2")
    assert out["form"] == "outer" and out["cauchy_schwarz"]
    assert call("pairing", neq4)[1]["pairs"] == [[1, 3], [2, 4]]
    assert call("classify4", neq4)[0] == 0
    code, out = call("factor", neq4, "--diagnose")
    assert out["diagnostics"]["in_B"] is False


def test_bridge_commands(tmp_path):
    csp = {"num_vars": 2, "signatures": {"e": io.signature_to_json(eq2())}, "constraints": [{"sig": "e", "vars": [0, 1]}]}
    code, grid = call("csp2eo", write(tmp_path, "c.json", csp))
    assert code == 0
    gpath = write(tmp_path, "g.json", grid)
    assert call("eval", gpath)[1]["value"] == "2"
    code, back = call("eo2csp", gpath)
    assert code == 0 and back["num_vars"] >= 1
    sq = {
        "num_vars": 2,
        "signatures": {"b": io.signature_to_json(norm_square(b_i()))},
        "base": {"b": io.signature_to_json(b_i())},
        "constraints": [{"sig": "b", "vars": [0, 1]}],
    }
    code, g = call("reduce-square", write(tmp_path, "sq.json", sq))
    assert code == 0 and call("eval", write(tmp_path, "sqg.json", g), "--mode", "brute")[1]["value"] == "2"
    odd = {
        "num_vars": 3,
        "signatures": {"n": io.signature_to_json(neq2())},
        "constraints": [{"sig": "n", "vars": [0, 1]}, {"sig": "n", "vars": [1, 2]}, {"sig": "n", "vars": [2, 0]}],
    }
    code, g = call("reduce-opposite", write(tmp_path, "odd.json", odd))
    assert code == 0 and g["class_map"]["bipartite"] is False and g["scale"] == "0"


def test_errors(tmp_path, capsys):
    assert call("eval", str(tmp_path / "missing.json"))[0] == 2
    assert call("nonsense")[0] == 2
    bad = write(tmp_path, "bad.json", {"arity": 2, "values": ["0", "1", "zz", "0"]})
    assert call("classify", bad)[0] == 2
    assert "values[2]" in capsys.readouterr().err
    nonars = write(tmp_path, "x.json", {"arity": 2, "values": ["0", "1", "2", "0"]})
    assert call("classify", nonars)[0] == 2


def test_float_and_determinism(tmp_path):
    bi = write(tmp_path, "bi.json", io.signature_to_json(b_i()))
    a = call("--float", "transform-z", bi)
    b = call("transform-z", bi, "--float")
    assert a == b
    assert all("." in v or v in ("0", "1", "-1") for v in a[1]["values"])
    assert call("selftest", "--rounds", "3", "--seed", "7") == call("--seed", "7", "selftest", "--rounds", "3")
    code, out = call("selftest", "--rounds", "3")
    assert code == 0 and out["ok"]
